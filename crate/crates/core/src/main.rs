use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use frrel::fuzzy_rough::{ClassProperty, Combinator, FrrValidationReport, FuzzyRoughSet};
use frrel::instance::{load_frr, Instance, InstanceError, InstanceFile};
use frrel::verifier::{search, PropositionId, SearchConfig, Status, Verdict};
use frrel::{Condition, Error, FuzzyRelation, PairSet, Universe};

/// Fuzzy rough relations on finite approximation spaces.
#[derive(Parser)]
#[command(name = "frrel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the membership function or a named relation of an instance.
    Validate {
        file: PathBuf,
        #[arg(long, conflicts_with = "relation", required_unless_present = "relation")]
        set: bool,
        #[arg(long, value_name = "NAME")]
        relation: Option<String>,
    },
    /// Print the approximations of X and of X × X.
    Approx { file: PathBuf },
    /// Combine two relations pointwise (meet, join, product, algsum).
    Combine {
        file: PathBuf,
        #[arg(long)]
        op: Combinator,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Max-min composition of two relations.
    Compose {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Similitude classes of a relation and their four properties.
    Classes {
        file: PathBuf,
        #[arg(long, value_name = "NAME")]
        relation: String,
    },
    /// Search for counterexamples to the catalogued propositions.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        denominator: u64,
        /// Comma-separated proposition ids, or `all`.
        #[arg(long, default_value = "all")]
        props: String,
        /// Bundles per context before switching to seeded sampling; 0 means unlimited.
        #[arg(long, default_value_t = 50_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write machine-readable verdicts here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Check bundles on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
}

/// Errors that map to exit status 2.
#[derive(Debug, thiserror::Error)]
enum InputError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{0}")]
    Other(String),
}

type Outcome = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file, set, relation } => cmd_validate(&file, set, relation.as_deref()),
        Command::Approx { file } => cmd_approx(&file),
        Command::Combine {
            file,
            op,
            left,
            right,
            out,
        } => cmd_combine(&file, op, &left, &right, out.as_deref()),
        Command::Compose {
            file,
            left,
            right,
            out,
        } => cmd_compose(&file, &left, &right, out.as_deref()),
        Command::Classes { file, relation } => cmd_classes(&file, &relation),
        Command::Verify {
            max_n,
            denominator,
            props,
            budget,
            seed,
            out,
            sequential,
        } => cmd_verify(max_n, denominator, &props, budget, seed, out.as_deref(), sequential),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<(InstanceFile, Instance), InputError> {
    let file = InstanceFile::load(path)?;
    let inst = file.resolve()?;
    Ok((file, inst))
}

fn print_frs_report(inst: &Instance, err: &Error) {
    let universe = inst.space.universe();
    match err {
        Error::NotRough => println!("X = {} is not rough: lower and upper approximations coincide", universe.show_set(&inst.x)),
        Error::InvalidFuzzyRoughSet(violations) => {
            for cond in [Condition::Lower, Condition::Outside, Condition::Boundary] {
                let hits: Vec<String> = violations
                    .iter()
                    .filter(|v| v.condition == cond)
                    .map(|v| format!("{}={}", universe.symbol(v.element), v.found))
                    .collect();
                if hits.is_empty() {
                    println!("condition {cond}: pass");
                } else {
                    println!("condition {cond}: FAIL ({}) at {}", cond.requirement(), hits.join(", "));
                }
            }
        }
        other => println!("{other}"),
    }
}

fn print_frr_report(universe: &Universe, report: &FrrValidationReport) {
    for cond in [Condition::Dominance, Condition::Lower, Condition::Outside, Condition::Boundary] {
        let hits: Vec<_> = report.violations.iter().filter(|v| v.condition == cond).collect();
        if hits.is_empty() {
            println!("condition {cond}: pass");
        } else {
            println!("condition {cond}: FAIL");
            for v in hits {
                println!("    {}", v.describe(universe));
            }
        }
    }
}

fn frs_or_report(inst: &Instance) -> Option<Arc<FuzzyRoughSet>> {
    match inst.fuzzy_rough_set() {
        Ok(frs) => Some(frs),
        Err(e) => {
            println!("invalid fuzzy rough set");
            print_frs_report(inst, &e);
            None
        }
    }
}

fn cmd_validate(path: &Path, set: bool, relation: Option<&str>) -> Outcome {
    let (_, inst) = load(path)?;
    if set {
        return Ok(match inst.fuzzy_rough_set() {
            Ok(_) => {
                println!("valid fuzzy rough set");
                print_frs_report(&inst, &Error::InvalidFuzzyRoughSet(Vec::new()));
                true
            }
            Err(e) => {
                println!("invalid fuzzy rough set");
                print_frs_report(&inst, &e);
                false
            }
        });
    }
    let name = relation.expect("clap requires --set or --relation");
    let rel = inst.relation(name)?;
    let Some(frs) = frs_or_report(&inst) else {
        return Ok(false);
    };
    let report = frs.check_relation(rel)?;
    if report.valid() {
        println!("relation {name}: valid fuzzy rough relation");
    } else {
        println!("relation {name}: invalid fuzzy rough relation");
    }
    print_frr_report(inst.space.universe(), &report);
    Ok(report.valid())
}

fn show_pairs(universe: &Universe, pairs: &PairSet) -> String {
    let items: Vec<String> = pairs.iter().map(|p| universe.show_pair(p)).collect();
    format!("{{{}}} ({} pairs)", items.join(","), pairs.len())
}

fn cmd_approx(path: &Path) -> Outcome {
    let (_, inst) = load(path)?;
    let universe = inst.space.universe();
    let approx = inst.space.approx_set(&inst.x)?;
    let rect = inst.space.rect_regions(&inst.x)?;
    println!("partition = {}", inst.space);
    println!("X = {}", universe.show_set(&inst.x));
    println!("lower = {}", universe.show_set(&approx.lower));
    println!("upper = {}", universe.show_set(&approx.upper));
    println!("boundary = {}", universe.show_set(&approx.boundary));
    println!("rough = {}", approx.is_rough());
    println!("lower(XxX) = {}", show_pairs(universe, &rect.lower));
    println!("upper(XxX) = {}", show_pairs(universe, &rect.upper));
    println!("boundary(XxX) = {}", show_pairs(universe, &rect.boundary));
    Ok(true)
}

/// Loads both operands as valid fuzzy rough relations, or fails with exit status 2.
fn load_operands(
    inst: &Instance,
    left: &str,
    right: &str,
) -> Result<(frrel::FuzzyRoughRelation, frrel::FuzzyRoughRelation), InputError> {
    let frs = inst.fuzzy_rough_set()?;
    let get = |name: &str| {
        load_frr(inst, &frs, name).map_err(|e| match e {
            InstanceError::Model(Error::InvalidFuzzyRoughRelation(report)) => {
                let first = report.violations[0].describe(inst.space.universe());
                InputError::Other(format!("relation `{name}` is not a valid fuzzy rough relation: {first}"))
            }
            other => other.into(),
        })
    };
    Ok((get(left)?, get(right)?))
}

fn write_result(
    mut file: InstanceFile,
    out: Option<&Path>,
    name: &str,
    rel: &FuzzyRelation,
) -> Result<(), InputError> {
    print_relation(name, rel);
    if let Some(out) = out {
        file.insert_relation(name, rel);
        file.save(out)?;
        println!("wrote {name} to {}", out.display());
    }
    Ok(())
}

fn print_relation(name: &str, rel: &FuzzyRelation) {
    let universe = rel.universe();
    println!("{name}:");
    for x in 0..rel.size() {
        let row: Vec<String> = (0..rel.size()).map(|y| rel.get(x, y).to_string()).collect();
        println!("    {}: [{}]", universe.symbol(x), row.join(", "));
    }
}

fn cmd_combine(path: &Path, op: Combinator, left: &str, right: &str, out: Option<&Path>) -> Outcome {
    let (file, inst) = load(path)?;
    let (r1, r2) = load_operands(&inst, left, right)?;
    let (rel, report) = r1.combine(op, &r2)?;
    let name = format!("{left}_{}_{right}", op.name());
    write_result(file, out, &name, &rel)?;
    if report.valid() {
        println!("{name}: valid fuzzy rough relation");
    } else {
        println!("{name}: invalid fuzzy rough relation");
    }
    print_frr_report(inst.space.universe(), &report);
    Ok(report.valid())
}

fn cmd_compose(path: &Path, left: &str, right: &str, out: Option<&Path>) -> Outcome {
    let (file, inst) = load(path)?;
    let (r1, r2) = load_operands(&inst, left, right)?;
    let (rel, report) = r1.compose_checked(&r2)?;
    let name = format!("{left}_compose_{right}");
    write_result(file, out, &name, &rel)?;
    if report.valid() {
        println!("{name}: valid fuzzy rough relation");
    } else {
        eprintln!("internal error: composition of fuzzy rough relations failed validation");
        println!("{name}: invalid fuzzy rough relation");
    }
    print_frr_report(inst.space.universe(), &report);
    Ok(report.valid())
}

fn cmd_classes(path: &Path, relation: &str) -> Outcome {
    let (_, inst) = load(path)?;
    let frs = inst.fuzzy_rough_set()?;
    let frr = load_frr(&inst, &frs, relation)?;
    let universe = inst.space.universe();
    let report = match frr.check_similitude_classes() {
        Ok(report) => report,
        Err(Error::NotSimilitude) => {
            let p = frr.predicates();
            println!(
                "{relation} is not similitude: symmetric={} transitive={} constant supported diagonal={}",
                p.symmetric,
                p.transitive,
                p.reflexive_order.is_some()
            );
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    println!("alpha = {}", report.alpha);
    for class in &report.classes {
        let grades: Vec<String> = class.grades.grades().iter().map(ToString::to_string).collect();
        println!("class {}: [{}]", universe.symbol(class.anchor), grades.join(", "));
    }
    for p in ClassProperty::ALL {
        let r = report.property(p);
        let status = match (&r.witness, r.vacuous()) {
            (Some(w), _) => {
                let names: Vec<&str> = w.iter().map(|&e| universe.symbol(e)).collect();
                format!("FAIL at ({})", names.join(","))
            }
            (None, true) => "pass (vacuous)".to_string(),
            (None, false) => format!("pass ({} cases)", r.exercised),
        };
        println!("property {}: {status}", p.id());
    }
    Ok(report.all_pass())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    max_n: usize,
    denominator: u64,
    budget: Option<u64>,
    seed: u64,
    verdicts: &'a [Verdict],
}

fn cmd_verify(
    max_n: usize,
    denominator: u64,
    props: &str,
    budget: u64,
    seed: u64,
    out: Option<&Path>,
    sequential: bool,
) -> Outcome {
    let props = PropositionId::parse_list(props)?;
    let budget = (budget > 0).then_some(budget);
    let mut config = SearchConfig::new(max_n, denominator, props)
        .with_budget(budget)
        .with_seed(seed);
    if sequential {
        config = config.sequential();
    }
    config.validate()?;
    let verdicts = search(&config)?;
    for v in &verdicts {
        println!("{}", v.summary_line());
    }
    if let Some(out) = out {
        let report = VerifyReport {
            max_n,
            denominator,
            budget,
            seed,
            verdicts: &verdicts,
        };
        let mut text = serde_json::to_string_pretty(&report)
            .map_err(|e| InputError::Other(e.to_string()))?;
        text.push('\n');
        std::fs::write(out, text)
            .map_err(|e| InputError::Other(format!("cannot write {}: {e}", out.display())))?;
    }
    Ok(verdicts.iter().all(|v| v.status != Status::Refuted))
}

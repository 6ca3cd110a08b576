//! The propositions of the fuzzy rough relation algebra as executable checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyRelation;
use crate::fuzzy_rough::{
    check_similitude_classes, relation_predicates, Combinator, Condition, FrrValidationReport,
    FuzzyRoughRelation,
};
use crate::grade::Grade;
use crate::rough::{Elem, Universe};

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropositionId {
    /// Meet of two fuzzy rough relations is one.
    P3_2,
    /// Join of two fuzzy rough relations is one.
    P3_3,
    /// Algebraic product of two fuzzy rough relations is one.
    P3_4,
    /// Algebraic sum keeps conditions (i)-(iii).
    P3_5_conditions,
    /// Algebraic sum stays under `min(μ(x), μ(y))`.
    P3_5_dominance,
    /// Meet and join of reflexive relations are reflexive fuzzy rough relations.
    P3_10,
    /// Product of reflexive relations is a reflexive fuzzy rough relation.
    P3_11,
    /// Algebraic sum of reflexive relations is a reflexive fuzzy rough relation.
    P3_12,
    /// Max-min composition is associative.
    P4_1,
    /// Composition of fuzzy rough relations is one.
    P4_2,
    /// Composition of reflexive relations is a reflexive fuzzy rough relation.
    P4_3,
    /// Symmetric and transitive implies weakly reflexive.
    P4_6,
    /// For w-reflexive relations, `R1 ∨ R2 ⊆ R1 ∘ R2`.
    P4_7,
    /// Class properties of similitude relations of order α.
    T4_9,
}

impl PropositionId {
    pub const ALL: [PropositionId; 14] = [
        PropositionId::P3_2,
        PropositionId::P3_3,
        PropositionId::P3_4,
        PropositionId::P3_5_conditions,
        PropositionId::P3_5_dominance,
        PropositionId::P3_10,
        PropositionId::P3_11,
        PropositionId::P3_12,
        PropositionId::P4_1,
        PropositionId::P4_2,
        PropositionId::P4_3,
        PropositionId::P4_6,
        PropositionId::P4_7,
        PropositionId::T4_9,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropositionId::P3_2 => "P3_2",
            PropositionId::P3_3 => "P3_3",
            PropositionId::P3_4 => "P3_4",
            PropositionId::P3_5_conditions => "P3_5_conditions",
            PropositionId::P3_5_dominance => "P3_5_dominance",
            PropositionId::P3_10 => "P3_10",
            PropositionId::P3_11 => "P3_11",
            PropositionId::P3_12 => "P3_12",
            PropositionId::P4_1 => "P4_1",
            PropositionId::P4_2 => "P4_2",
            PropositionId::P4_3 => "P4_3",
            PropositionId::P4_6 => "P4_6",
            PropositionId::P4_7 => "P4_7",
            PropositionId::T4_9 => "T4_9",
        }
    }

    /// Number of relations in one bundle.
    pub fn arity(&self) -> usize {
        match self {
            PropositionId::P4_6 | PropositionId::T4_9 => 1,
            PropositionId::P4_1 => 3,
            _ => 2,
        }
    }

    pub fn ordinal(&self) -> usize {
        Self::ALL.iter().position(|p| p == self).expect("catalog is closed")
    }

    /// Parses a comma-separated list; `all` expands to the whole catalog.
    pub fn parse_list(text: &str) -> Result<Vec<PropositionId>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item.eq_ignore_ascii_case("all") {
                out.extend(Self::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Bounds("proposition list", "empty".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Bounds("proposition id", format!("unknown `{s}`")))
    }
}

/// Where and how a bundle broke a proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Witness elements: a pair for pointwise claims, anchors for class claims.
    pub elements: Vec<Elem>,
    pub found: Option<Grade>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The bundle does not meet the proposition's hypothesis.
    Filtered,
    Pass,
    Fail(Failure),
}

fn validation_failure(universe: &Universe, what: &str, report: &FrrValidationReport) -> Outcome {
    match report.violations.first() {
        None => Outcome::Pass,
        Some(v) => Outcome::Fail(Failure {
            elements: vec![v.pair.0, v.pair.1],
            found: Some(v.found),
            detail: format!("{what}: {}", v.describe(universe)),
        }),
    }
}

fn reflexivity_failure(universe: &Universe, what: &str, bundle0: &FuzzyRoughRelation, rel: &FuzzyRelation) -> Outcome {
    let mu = bundle0.context().mu();
    match (0..rel.size()).find(|&x| !mu.get(x).is_zero() && !rel.get(x, x).is_one()) {
        None => Outcome::Pass,
        Some(x) => Outcome::Fail(Failure {
            elements: vec![x, x],
            found: Some(rel.get(x, x)),
            detail: format!(
                "{what}: diagonal at {} is {}, reflexivity requires 1",
                universe.show_pair((x, x)),
                rel.get(x, x)
            ),
        }),
    }
}

/// Combines, validates and optionally demands reflexivity of the result.
fn combined_is_frr(
    op: Combinator,
    r1: &FuzzyRoughRelation,
    r2: &FuzzyRoughRelation,
    need_reflexive: bool,
) -> Result<Outcome> {
    let universe = r1.context().universe();
    let (rel, report) = r1.combine(op, r2)?;
    let what = op.name();
    let outcome = validation_failure(universe, what, &report);
    if outcome != Outcome::Pass || !need_reflexive {
        return Ok(outcome);
    }
    Ok(reflexivity_failure(universe, what, r1, &rel))
}

fn composed_is_frr(r1: &FuzzyRoughRelation, r2: &FuzzyRoughRelation, need_reflexive: bool) -> Result<Outcome> {
    let universe = r1.context().universe();
    let (rel, report) = r1.compose_checked(r2)?;
    let outcome = validation_failure(universe, "composition", &report);
    if outcome != Outcome::Pass || !need_reflexive {
        return Ok(outcome);
    }
    Ok(reflexivity_failure(universe, "composition", r1, &rel))
}

/// Evaluates one proposition on one bundle of relations sharing a context.
pub fn check(prop: PropositionId, bundle: &[FuzzyRoughRelation]) -> Result<Outcome> {
    if bundle.len() != prop.arity() {
        return Err(Error::Arity {
            expected: prop.arity(),
            found: bundle.len(),
        });
    }
    let r1 = &bundle[0];
    let universe = r1.context().universe();
    let reflexive = |r: &FuzzyRoughRelation| r.predicates().reflexive;

    match prop {
        PropositionId::P3_2 => combined_is_frr(Combinator::Meet, r1, &bundle[1], false),
        PropositionId::P3_3 => combined_is_frr(Combinator::Join, r1, &bundle[1], false),
        PropositionId::P3_4 => combined_is_frr(Combinator::Product, r1, &bundle[1], false),
        PropositionId::P3_5_conditions => {
            let (_, report) = r1.combine(Combinator::AlgSum, &bundle[1])?;
            Ok(validation_failure(universe, "algsum", &report.without_dominance()))
        }
        PropositionId::P3_5_dominance => {
            let (_, report) = r1.combine(Combinator::AlgSum, &bundle[1])?;
            let dominance = FrrValidationReport {
                violations: report.first(Condition::Dominance).into_iter().cloned().collect(),
            };
            Ok(validation_failure(universe, "algsum", &dominance))
        }
        PropositionId::P3_10 | PropositionId::P3_11 | PropositionId::P3_12 => {
            let r2 = &bundle[1];
            if !(reflexive(r1) && reflexive(r2)) {
                return Ok(Outcome::Filtered);
            }
            let ops: &[Combinator] = match prop {
                PropositionId::P3_10 => &[Combinator::Meet, Combinator::Join],
                PropositionId::P3_11 => &[Combinator::Product],
                _ => &[Combinator::AlgSum],
            };
            for &op in ops {
                let outcome = combined_is_frr(op, r1, r2, true)?;
                if outcome != Outcome::Pass {
                    return Ok(outcome);
                }
            }
            Ok(Outcome::Pass)
        }
        PropositionId::P4_1 => {
            let (r2, r3) = (&bundle[1], &bundle[2]);
            r1.shared_context(r2)?;
            r1.shared_context(r3)?;
            let left = r1.relation().compose(r2.relation())?.compose(r3.relation())?;
            let right = r1.relation().compose(&r2.relation().compose(r3.relation())?)?;
            let mismatch = left.cells().zip(right.cells()).find(|((_, a), (_, b))| a != b);
            Ok(match mismatch {
                None => Outcome::Pass,
                Some(((p, a), (_, b))) => Outcome::Fail(Failure {
                    elements: vec![p.0, p.1],
                    found: Some(a),
                    detail: format!(
                        "(R1∘R2)∘R3 = {a} but R1∘(R2∘R3) = {b} at {}",
                        universe.show_pair(p)
                    ),
                }),
            })
        }
        PropositionId::P4_2 => composed_is_frr(r1, &bundle[1], false),
        PropositionId::P4_3 => {
            if !(reflexive(r1) && reflexive(&bundle[1])) {
                return Ok(Outcome::Filtered);
            }
            composed_is_frr(r1, &bundle[1], true)
        }
        PropositionId::P4_6 => {
            let p = r1.predicates();
            if !(p.symmetric && p.transitive) {
                return Ok(Outcome::Filtered);
            }
            let rel = r1.relation();
            let mu = r1.context().mu();
            let n = rel.size();
            let broken = (0..n)
                .filter(|&x| !mu.get(x).is_zero())
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| rel.get(x, x) < rel.get(x, y));
            Ok(match broken {
                None => Outcome::Pass,
                Some((x, y)) => Outcome::Fail(Failure {
                    elements: vec![x, y],
                    found: Some(rel.get(x, y)),
                    detail: format!(
                        "row {} exceeds its diagonal {}: {} at {}",
                        universe.symbol(x),
                        rel.get(x, x),
                        rel.get(x, y),
                        universe.show_pair((x, y))
                    ),
                }),
            })
        }
        PropositionId::P4_7 => {
            let r2 = &bundle[1];
            if !(r1.predicates().w_reflexive && r2.predicates().w_reflexive) {
                return Ok(Outcome::Filtered);
            }
            let join = r1.relation().pointwise(crate::grade::GradeOp::Max, r2.relation())?;
            let comp = r1.relation().compose(r2.relation())?;
            Ok(match join.excess_over(&comp)? {
                None => Outcome::Pass,
                Some(p) => Outcome::Fail(Failure {
                    elements: vec![p.0, p.1],
                    found: Some(join.get(p.0, p.1)),
                    detail: format!(
                        "R1 ∨ R2 = {} exceeds R1 ∘ R2 = {} at {}",
                        join.get(p.0, p.1),
                        comp.get(p.0, p.1),
                        universe.show_pair(p)
                    ),
                }),
            })
        }
        PropositionId::T4_9 => {
            let mu = r1.context().mu();
            if relation_predicates(mu, r1.relation()).similitude_order.is_none() {
                return Ok(Outcome::Filtered);
            }
            let report = check_similitude_classes(mu, r1.relation())?;
            Ok(match report.properties.iter().find(|p| !p.passed()) {
                None => Outcome::Pass,
                Some(p) => {
                    let anchors = p.witness.clone().unwrap_or_default();
                    let names: Vec<&str> = anchors.iter().map(|&e| universe.symbol(e)).collect();
                    Outcome::Fail(Failure {
                        elements: anchors,
                        found: None,
                        detail: format!(
                            "class property {} fails at anchors ({}), alpha = {}",
                            p.property.id(),
                            names.join(","),
                            report.alpha
                        ),
                    })
                }
            })
        }
    }
}

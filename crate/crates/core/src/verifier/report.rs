use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize};

use super::catalog::{check, Failure, Outcome, PropositionId};
use super::SearchConfig;
use crate::error::Result;
use crate::fuzzy_rough::FuzzyRoughRelation;
use crate::grade::Grade;
use crate::instance::{load_frr, InstanceError, InstanceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every bundle that met the hypothesis passed, and at least one did.
    Holds,
    /// No bundle met the hypothesis.
    Vacuous,
    /// At least one counterexample was found.
    Refuted,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Vacuous => "vacuous",
            Status::Refuted => "refuted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub found: Option<Grade>,
    pub detail: String,
}

/// A failing bundle with its whole context, in instance file form.
///
/// Serialises as an instance file (relations named `R1`, `R2`, `R3`) with
/// the verdict fields added at the top level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub proposition: PropositionId,
    pub universe_size: usize,
    pub denominator: u64,
    #[serde(flatten)]
    pub instance: InstanceFile,
    pub witness: WitnessRecord,
}

fn take_field<T, E>(obj: &mut serde_json::Map<String, serde_json::Value>, key: &str) -> std::result::Result<T, E>
where
    T: serde::de::DeserializeOwned,
    E: serde::de::Error,
{
    let value = obj
        .remove(key)
        .ok_or_else(|| E::custom(format!("missing field `{key}`")))?;
    serde_json::from_value(value).map_err(E::custom)
}

impl<'de> Deserialize<'de> for Counterexample {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let mut obj = serde_json::Map::deserialize(deserializer)?;
        let proposition = take_field(&mut obj, "proposition")?;
        let universe_size = take_field(&mut obj, "universe_size")?;
        let denominator = take_field(&mut obj, "denominator")?;
        let witness = take_field(&mut obj, "witness")?;
        // Whatever remains must be a plain instance file.
        let instance = serde_json::from_value(serde_json::Value::Object(obj))
            .map_err(serde::de::Error::custom)?;
        Ok(Counterexample {
            proposition,
            universe_size,
            denominator,
            instance,
            witness,
        })
    }
}

impl Counterexample {
    pub fn new(
        proposition: PropositionId,
        universe_size: usize,
        denominator: u64,
        bundle: &[FuzzyRoughRelation],
        failure: &Failure,
    ) -> Self {
        let context = bundle[0].context();
        let universe = context.universe();
        let names = ["R1", "R2", "R3"];
        let instance = InstanceFile::from_context(
            context,
            names.iter().zip(bundle).map(|(&n, r)| (n, r.relation())),
        );
        Counterexample {
            proposition,
            universe_size,
            denominator,
            instance,
            witness: WitnessRecord {
                elements: failure
                    .elements
                    .iter()
                    .map(|&e| universe.symbol(e).to_string())
                    .collect(),
                found: failure.found,
                detail: failure.detail.clone(),
            },
        }
    }

    /// Rebuilds the bundle from the serialised instance and checks it again.
    ///
    /// Returns `true` when the proposition still fails on the bundle.
    pub fn replay(&self) -> std::result::Result<bool, InstanceError> {
        let inst = self.instance.resolve()?;
        let frs = inst.fuzzy_rough_set()?;
        let bundle = ["R1", "R2", "R3"][..self.proposition.arity()]
            .iter()
            .map(|name| load_frr(&inst, &frs, name))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(matches!(check(self.proposition, &bundle)?, Outcome::Fail(_)))
    }

    pub fn summary(&self) -> String {
        let rels: Vec<String> = self
            .instance
            .relations
            .iter()
            .map(|(name, entry)| {
                let cells: Vec<String> = entry
                    .pairs
                    .iter()
                    .map(|p| format!("{}{}:{}", p.0, p.1, p.2))
                    .collect();
                format!("{name}=[{}]", cells.join(" "))
            })
            .collect();
        let mu: Vec<String> = self.instance.mu.iter().map(|(k, g)| format!("{k}:{g}")).collect();
        let blocks: Vec<String> = self
            .instance
            .partition
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        format!(
            "n={} d={} partition={} X={{{}}} mu={{{}}} {} | {}",
            self.universe_size,
            self.denominator,
            blocks.join(""),
            self.instance.x.join(","),
            mu.join(","),
            rels.join(" "),
            self.witness.detail
        )
    }
}

/// Outcome of one proposition over a whole search space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub proposition: PropositionId,
    pub status: Status,
    pub max_universe: usize,
    pub denominator: u64,
    pub budget: Option<u64>,
    pub seed: u64,
    pub sampled: bool,
    pub contexts: u64,
    /// Contexts with a boundary cell that admits no grid value.
    pub skipped_contexts: u64,
    /// Bundles examined; equals `filtered + passed + failed`.
    pub checked: u64,
    pub filtered: u64,
    pub passed: u64,
    pub failed: u64,
    /// Smallest configuration at which a counterexample appeared.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failure_at: Option<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl Verdict {
    pub(crate) fn empty(proposition: PropositionId, config: &SearchConfig) -> Self {
        Verdict {
            proposition,
            status: Status::Vacuous,
            max_universe: config.max_universe,
            denominator: config.grade_denominator,
            budget: config.relation_budget,
            seed: config.seed,
            sampled: false,
            contexts: 0,
            skipped_contexts: 0,
            checked: 0,
            filtered: 0,
            passed: 0,
            failed: 0,
            first_failure_at: None,
            counterexamples: Vec::new(),
        }
    }

    pub(crate) fn finish(&mut self) {
        self.status = if self.failed > 0 {
            Status::Refuted
        } else if self.passed > 0 {
            Status::Holds
        } else {
            Status::Vacuous
        };
        self.first_failure_at = self
            .counterexamples
            .first()
            .map(|c| format!("|U|={} d={}", c.universe_size, c.denominator));
    }

    /// One line: status and exact counts, then the first counterexample if any.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{:<16} {:<8} checked={} filtered={} passed={} failed={} contexts={} skipped={} sampled={}",
            self.proposition.as_str(),
            self.status.as_str(),
            self.checked,
            self.filtered,
            self.passed,
            self.failed,
            self.contexts,
            self.skipped_contexts,
            if self.sampled { "yes" } else { "no" },
        );
        if let (Some(at), Some(c)) = (&self.first_failure_at, self.counterexamples.first()) {
            let _ = write!(line, "\n    first counterexample at {at}: {}", c.summary());
        }
        line
    }

    pub fn replay_all(&self) -> Result<bool, InstanceError> {
        for c in &self.counterexamples {
            if !c.replay()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

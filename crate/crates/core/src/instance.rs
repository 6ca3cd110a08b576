//! JSON instance files: one approximation space, one subset `X`, one
//! membership function and any number of named relations.
//!
//! ```json
//! {
//!   "universe": ["a", "b"],
//!   "partition": [["a", "b"]],
//!   "X": ["a"],
//!   "mu": {"a": "1/2", "b": "1/2"},
//!   "relations": {"R1": {"pairs": [["a", "a", "1/2"], ["a", "b", "0.5"]]}}
//! }
//! ```
//!
//! Grades are strings, either `p/q` or a decimal. Elements missing from `mu`
//! and pairs missing from a relation have grade 0. Serialization always
//! writes grades as lowest-terms `p/q`.

use std::collections::HashSet;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::fuzzy::{FuzzyRelation, FuzzySet};
use crate::fuzzy_rough::{FuzzyRoughRelation, FuzzyRoughSet};
use crate::grade::Grade;
use crate::rough::{ApproximationSpace, ElemSet, Universe};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("relation `{relation}` lists pair ({x},{y}) more than once")]
    DuplicatePair {
        relation: String,
        x: String,
        y: String,
    },
    #[error("no relation named `{0}`")]
    UnknownRelation(String),
    #[error("relation `{0}` already exists")]
    RelationExists(String),
    #[error(transparent)]
    Model(#[from] Error),
}

/// One `[x, y, grade]` entry of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry(pub String, pub String, pub Grade);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub pairs: Vec<PairEntry>,
}

/// The on-disk form of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub universe: Vec<String>,
    pub partition: Vec<Vec<String>>,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub mu: IndexMap<String, Grade>,
    #[serde(default)]
    pub relations: IndexMap<String, RelationEntry>,
}

/// An instance with every symbol resolved and every map made total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub space: Arc<ApproximationSpace>,
    pub x: ElemSet,
    pub mu: FuzzySet,
    pub relations: IndexMap<String, FuzzyRelation>,
}

impl Instance {
    /// Validates the membership function as a fuzzy rough set over `X`.
    pub fn fuzzy_rough_set(&self) -> Result<Arc<FuzzyRoughSet>, Error> {
        FuzzyRoughSet::new(self.space.clone(), self.x.clone(), self.mu.clone()).map(Arc::new)
    }

    pub fn relation(&self, name: &str) -> Result<&FuzzyRelation, InstanceError> {
        self.relations
            .get(name)
            .ok_or_else(|| InstanceError::UnknownRelation(name.to_string()))
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InstanceError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance serializes");
        text.push('\n');
        text
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), InstanceError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Resolves symbols against the universe and builds total grade maps.
    pub fn resolve(&self) -> Result<Instance, InstanceError> {
        let universe = Arc::new(Universe::new(self.universe.iter().cloned())?);
        let space = Arc::new(ApproximationSpace::new(universe.clone(), &self.partition)?);
        let x = universe.subset(&self.x)?;

        let mut grades = vec![Grade::ZERO; universe.len()];
        for (sym, &g) in &self.mu {
            grades[universe.elem(sym)?] = g;
        }
        let mu = FuzzySet::new(universe.clone(), grades)?;

        let mut relations = IndexMap::with_capacity(self.relations.len());
        for (name, entry) in &self.relations {
            let mut rel = FuzzyRelation::constant(universe.clone(), Grade::ZERO);
            let mut seen = HashSet::new();
            for PairEntry(xs, ys, g) in &entry.pairs {
                let (xe, ye) = (universe.elem(xs)?, universe.elem(ys)?);
                if !seen.insert((xe, ye)) {
                    return Err(InstanceError::DuplicatePair {
                        relation: name.clone(),
                        x: xs.clone(),
                        y: ys.clone(),
                    });
                }
                rel.set(xe, ye, *g);
            }
            relations.insert(name.clone(), rel);
        }

        Ok(Instance {
            space,
            x,
            mu,
            relations,
        })
    }

    /// Writes a context and its relations, listing every `mu` entry and the
    /// non-zero cells of each relation in row-major order.
    pub fn from_context<'a, I>(frs: &FuzzyRoughSet, relations: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a FuzzyRelation)>,
    {
        Self::from_parts(frs.space(), frs.x(), frs.mu(), relations)
    }

    pub fn from_parts<'a, I>(
        space: &ApproximationSpace,
        x: &ElemSet,
        mu: &FuzzySet,
        relations: I,
    ) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a FuzzyRelation)>,
    {
        let universe = space.universe();
        let sym = |e| universe.symbol(e).to_string();
        let mut file = InstanceFile {
            universe: universe.symbols().to_vec(),
            partition: space
                .blocks()
                .iter()
                .map(|b| b.iter().map(sym).collect())
                .collect(),
            x: x.iter().map(sym).collect(),
            mu: (0..universe.len()).map(|e| (sym(e), mu.get(e))).collect(),
            relations: IndexMap::new(),
        };
        for (name, rel) in relations {
            file.insert_relation(name, rel);
        }
        file
    }

    /// Adds or replaces a relation, keeping only non-zero cells.
    pub fn insert_relation(&mut self, name: &str, rel: &FuzzyRelation) {
        let universe = rel.universe();
        let pairs = rel
            .cells()
            .filter(|(_, g)| !g.is_zero())
            .map(|((x, y), g)| {
                PairEntry(universe.symbol(x).to_string(), universe.symbol(y).to_string(), g)
            })
            .collect();
        self.relations.insert(name.to_string(), RelationEntry { pairs });
    }
}

/// Resolves `name` in `instance` and validates it against the instance's context.
pub fn load_frr(
    instance: &Instance,
    frs: &Arc<FuzzyRoughSet>,
    name: &str,
) -> Result<FuzzyRoughRelation, InstanceError> {
    let rel = instance.relation(name)?.clone();
    Ok(frs.validate_relation(rel)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E2: &str = r#"{
        "universe": ["a", "b"],
        "partition": [["a", "b"]],
        "X": ["a"],
        "mu": {"a": "1/2", "b": "0.5"},
        "relations": {
            "R1": {"pairs": [["a","a","1/2"],["a","b","1/2"],["b","a","1/2"],["b","b","1/2"]]}
        }
    }"#;

    #[test]
    fn parses_and_resolves() {
        let file = InstanceFile::from_json(E2).unwrap();
        let inst = file.resolve().unwrap();
        assert_eq!(inst.mu.grades(), &[Grade::new(1, 2).unwrap(); 2]);
        let frs = inst.fuzzy_rough_set().unwrap();
        assert!(load_frr(&inst, &frs, "R1").is_ok());
        assert!(matches!(load_frr(&inst, &frs, "R9"), Err(InstanceError::UnknownRelation(_))));
    }

    #[test]
    fn round_trip_normalises_decimals() {
        let file = InstanceFile::from_json(E2).unwrap();
        let text = file.to_json();
        assert!(text.contains("\"1/2\""));
        assert!(!text.contains("0.5"));
        assert_eq!(InstanceFile::from_json(&text).unwrap(), file);
    }

    #[test]
    fn rejects_unknown_keys_and_duplicates() {
        let extra = E2.replacen("\"X\"", "\"colour\": 1, \"X\"", 1);
        assert!(matches!(InstanceFile::from_json(&extra), Err(InstanceError::Json(_))));

        let dup = E2.replace(r#"["b","b","1/2"]"#, r#"["a","a","1/4"]"#);
        let err = InstanceFile::from_json(&dup).unwrap().resolve().unwrap_err();
        assert!(matches!(err, InstanceError::DuplicatePair { .. }), "{err}");

        let bad = E2.replace("\"0.5\"", "\"5/4\"");
        let err = InstanceFile::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("5/4"), "{err}");
    }

    #[test]
    fn missing_entries_default_to_zero() {
        let text = r#"{"universe":["a","b"],"partition":[["a"],["b"]],"X":[],"mu":{}}"#;
        let inst = InstanceFile::from_json(text).unwrap().resolve().unwrap();
        assert!(inst.mu.is_empty_set());
        assert!(inst.relations.is_empty());
    }
}

use thiserror::Error;

use crate::fuzzy_rough::{FrrValidationReport, FrsViolation};

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate symbol `{0}` in universe")]
    DuplicateSymbol(String),
    #[error("element `{0}` is not in the universe")]
    UnknownElement(String),
    #[error("element `{0}` appears in more than one block")]
    Overlap(String),
    #[error("element `{0}` is not covered by any block")]
    Coverage(String),
    #[error("partition contains an empty block")]
    EmptyBlock,
    #[error("operands are defined over different universes")]
    UniverseMismatch,
    #[error("fuzzy rough relations do not share one fuzzy rough set context")]
    ContextMismatch,
    #[error("X is definable (lower approximation equals upper approximation)")]
    NotRough,
    #[error("membership function violates {} fuzzy rough set condition(s)", .0.len())]
    InvalidFuzzyRoughSet(Vec<FrsViolation>),
    #[error("relation violates {} fuzzy rough relation condition(s)", .0.violations.len())]
    InvalidFuzzyRoughRelation(FrrValidationReport),
    #[error("relation is not a similitude relation of any order")]
    NotSimilitude,
    #[error("anchor `{0}` has zero membership")]
    ZeroSupport(String),
    #[error("invalid grade literal `{0}`: {1}")]
    InvalidGrade(String, &'static str),
    #[error("{0} out of bounds: {1}")]
    Bounds(&'static str, String),
    #[error("expected a bundle of {expected} relation(s), got {found}")]
    Arity { expected: usize, found: usize },
    #[error("boundary cell ({0}, {1}) admits no grid value below its dominance bound")]
    EmptyGrid(String, String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

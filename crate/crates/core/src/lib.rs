//! Fuzzy rough relations over finite approximation spaces.
//!
//! The crate is layered bottom-up:
//!
//! * [`grade`]: exact rational membership grades in `[0, 1]`.
//! * [`rough`]: approximation spaces, lower/upper approximations of sets and relations.
//! * [`fuzzy`]: fuzzy sets and relations, pointwise combinators, max-min composition.
//! * [`fuzzy_rough`]: fuzzy rough sets and relations, their predicates and similitude classes.
//! * [`verifier`]: exhaustive and sampled search for counterexamples to the algebra's propositions.
//! * [`instance`]: the JSON instance file format shared by the CLI and verifier reports.

pub mod error;
pub mod fuzzy;
pub mod fuzzy_rough;
pub mod grade;
pub mod instance;
pub mod rough;
pub mod verifier;

pub use error::{Error, Result};
pub use fuzzy::{FuzzyPredicates, FuzzyRelation, FuzzySet};
pub use fuzzy_rough::{
    Combinator, Condition, FrrPredicates, FrrValidationReport, FuzzyRoughRelation, FuzzyRoughSet,
};
pub use grade::{Grade, GradeOp};
pub use rough::{ApproxResult, ApproximationSpace, Elem, ElemSet, PairSet, Region, Universe};

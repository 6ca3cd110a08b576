//! Fuzzy rough sets and fuzzy rough relations.
//!
//! A [`FuzzyRoughSet`] pins a membership function to a rough subset `X`: it
//! is 1 on `lower(X)`, 0 outside `upper(X)` and strictly inside `(0, 1)` on
//! the boundary. A [`FuzzyRoughRelation`] lives over such a context and
//! repeats the pattern on the rectangle regions of `X × X`, while staying
//! below `min(μ(x), μ(y))` everywhere.
//!
//! Reflexivity-type predicates only look at the diagonal, and only at
//! elements with positive membership.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyRelation, FuzzySet};
use crate::grade::{Grade, GradeOp};
use crate::rough::{ApproxResult, ApproximationSpace, Elem, ElemSet, Region, Universe};

/// The membership conditions checked during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Grade at most `min(μ(x), μ(y))`.
    Dominance,
    /// Grade 1 on the lower region.
    Lower,
    /// Grade 0 outside the upper region.
    Outside,
    /// Grade strictly inside `(0, 1)` on the boundary.
    Boundary,
}

impl Condition {
    pub fn id(&self) -> &'static str {
        match self {
            Condition::Dominance => "dominance",
            Condition::Lower => "(i)",
            Condition::Outside => "(ii)",
            Condition::Boundary => "(iii)",
        }
    }

    pub fn requirement(&self) -> &'static str {
        match self {
            Condition::Dominance => "grade <= min(mu(x), mu(y))",
            Condition::Lower => "grade = 1 on the lower region",
            Condition::Outside => "grade = 0 outside the upper region",
            Condition::Boundary => "0 < grade < 1 on the boundary region",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A membership condition broken at one element of a candidate fuzzy rough set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrsViolation {
    pub condition: Condition,
    pub element: Elem,
    pub found: Grade,
}

/// A condition broken at one pair of a candidate fuzzy rough relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrrViolation {
    pub condition: Condition,
    pub pair: (Elem, Elem),
    pub found: Grade,
    /// `min(μ(x), μ(y))` at the pair.
    pub bound: Grade,
}

impl FrrViolation {
    pub fn describe(&self, universe: &Universe) -> String {
        let pair = universe.show_pair(self.pair);
        match self.condition {
            Condition::Dominance => format!(
                "dominance violated at {pair}: {} > bound {}",
                self.found, self.bound
            ),
            c => format!(
                "condition {} violated at {pair}: found {}, required {}",
                c.id(),
                self.found,
                c.requirement()
            ),
        }
    }
}

/// Every condition failure of a relation against one fuzzy rough set context.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrrValidationReport {
    pub violations: Vec<FrrViolation>,
}

impl FrrValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when only dominance failures (if any) were recorded.
    pub fn regions_hold(&self) -> bool {
        self.violations
            .iter()
            .all(|v| v.condition == Condition::Dominance)
    }

    pub fn first(&self, condition: Condition) -> Option<&FrrViolation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    pub fn without_dominance(&self) -> FrrValidationReport {
        FrrValidationReport {
            violations: self
                .violations
                .iter()
                .filter(|v| v.condition != Condition::Dominance)
                .cloned()
                .collect(),
        }
    }
}

/// A membership function tied to a rough subset `X` of an approximation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRoughSet {
    space: Arc<ApproximationSpace>,
    x: ElemSet,
    approx: ApproxResult,
    mu: FuzzySet,
    regions: Vec<Region>,
    bound: FuzzyRelation,
}

impl FuzzyRoughSet {
    /// Checks that `X` is rough and that `mu` is 1 on the lower approximation,
    /// 0 outside the upper one and strictly fractional on the boundary.
    ///
    /// All violated conditions are reported together, in universe order.
    pub fn new(space: Arc<ApproximationSpace>, x: ElemSet, mu: FuzzySet) -> Result<Self> {
        let universe = space.universe();
        if **mu.universe() != **universe {
            return Err(Error::UniverseMismatch);
        }
        let approx = space.approx_set(&x)?;
        if !approx.is_rough() {
            return Err(Error::NotRough);
        }
        let violations = frs_violations(&approx, &mu);
        if !violations.is_empty() {
            return Err(Error::InvalidFuzzyRoughSet(violations));
        }
        let regions = space.region_map(&approx);
        let bound = mu.square();
        Ok(FuzzyRoughSet {
            space,
            x,
            approx,
            mu,
            regions,
            bound,
        })
    }

    pub fn space(&self) -> &Arc<ApproximationSpace> {
        &self.space
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.space.universe()
    }

    pub fn x(&self) -> &ElemSet {
        &self.x
    }

    pub fn approx(&self) -> &ApproxResult {
        &self.approx
    }

    pub fn mu(&self) -> &FuzzySet {
        &self.mu
    }

    /// `min(μ(x), μ(y))` as a relation.
    pub fn bound(&self) -> &FuzzyRelation {
        &self.bound
    }

    pub fn region(&self, x: Elem, y: Elem) -> Region {
        self.regions[x * self.space.len() + y]
    }

    /// Evaluates every condition on `rel` without taking ownership.
    pub fn check_relation(&self, rel: &FuzzyRelation) -> Result<FrrValidationReport> {
        if **rel.universe() != **self.universe() {
            return Err(Error::UniverseMismatch);
        }
        let mut violations = Vec::new();
        for ((x, y), found) in rel.cells() {
            let bound = self.bound.get(x, y);
            if found > bound {
                violations.push(FrrViolation {
                    condition: Condition::Dominance,
                    pair: (x, y),
                    found,
                    bound,
                });
            }
            let broken = match self.region(x, y) {
                Region::Lower => (!found.is_one()).then_some(Condition::Lower),
                Region::Outside => (!found.is_zero()).then_some(Condition::Outside),
                Region::Boundary => (!found.is_interior()).then_some(Condition::Boundary),
            };
            if let Some(condition) = broken {
                violations.push(FrrViolation {
                    condition,
                    pair: (x, y),
                    found,
                    bound,
                });
            }
        }
        Ok(FrrValidationReport { violations })
    }

    pub fn validate_relation(self: &Arc<Self>, rel: FuzzyRelation) -> Result<FuzzyRoughRelation> {
        let report = self.check_relation(&rel)?;
        if report.valid() {
            Ok(FuzzyRoughRelation {
                context: Arc::clone(self),
                rel,
            })
        } else {
            Err(Error::InvalidFuzzyRoughRelation(report))
        }
    }
}

fn frs_violations(approx: &ApproxResult, mu: &FuzzySet) -> Vec<FrsViolation> {
    let mut out = Vec::new();
    for e in 0..mu.grades().len() {
        let found = mu.get(e);
        let broken = if approx.lower.contains(e) {
            (!found.is_one()).then_some(Condition::Lower)
        } else if !approx.upper.contains(e) {
            (!found.is_zero()).then_some(Condition::Outside)
        } else {
            (!found.is_interior()).then_some(Condition::Boundary)
        };
        if let Some(condition) = broken {
            out.push(FrsViolation {
                condition,
                element: e,
                found,
            });
        }
    }
    out
}

/// A fuzzy relation validated against a shared fuzzy rough set context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRoughRelation {
    context: Arc<FuzzyRoughSet>,
    rel: FuzzyRelation,
}

/// Combinators for pairs of fuzzy rough relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combinator {
    Meet,
    Join,
    Product,
    AlgSum,
}

impl Combinator {
    pub const ALL: [Combinator; 4] = [
        Combinator::Meet,
        Combinator::Join,
        Combinator::Product,
        Combinator::AlgSum,
    ];

    pub fn grade_op(self) -> GradeOp {
        match self {
            Combinator::Meet => GradeOp::Min,
            Combinator::Join => GradeOp::Max,
            Combinator::Product => GradeOp::Product,
            Combinator::AlgSum => GradeOp::AlgSum,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Combinator::Meet => "meet",
            Combinator::Join => "join",
            Combinator::Product => "product",
            Combinator::AlgSum => "algsum",
        }
    }
}

impl std::str::FromStr for Combinator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Combinator::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown combinator `{s}` (expected meet, join, product or algsum)"))
    }
}

impl FuzzyRoughRelation {
    /// Wraps a relation built cell by cell from the admissible grid of `context`.
    pub(crate) fn from_grid(context: Arc<FuzzyRoughSet>, rel: FuzzyRelation) -> Self {
        debug_assert!(context.check_relation(&rel).is_ok_and(|r| r.valid()));
        FuzzyRoughRelation { context, rel }
    }

    pub fn context(&self) -> &Arc<FuzzyRoughSet> {
        &self.context
    }

    pub fn relation(&self) -> &FuzzyRelation {
        &self.rel
    }

    pub fn into_relation(self) -> FuzzyRelation {
        self.rel
    }

    pub(crate) fn shared_context(&self, other: &FuzzyRoughRelation) -> Result<()> {
        if Arc::ptr_eq(&self.context, &other.context) || *self.context == *other.context {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Pointwise combination plus its validation report in the shared context.
    ///
    /// The result is returned even when the report is not clean, so callers
    /// can inspect the combined relation.
    pub fn combine(
        &self,
        op: Combinator,
        other: &FuzzyRoughRelation,
    ) -> Result<(FuzzyRelation, FrrValidationReport)> {
        self.shared_context(other)?;
        let rel = self.rel.pointwise(op.grade_op(), &other.rel)?;
        let report = self.context.check_relation(&rel)?;
        Ok((rel, report))
    }

    /// Max-min composition plus its validation report, without enforcing validity.
    pub fn compose_checked(
        &self,
        other: &FuzzyRoughRelation,
    ) -> Result<(FuzzyRelation, FrrValidationReport)> {
        self.shared_context(other)?;
        let rel = self.rel.compose(&other.rel)?;
        let report = self.context.check_relation(&rel)?;
        Ok((rel, report))
    }

    /// Max-min composition, revalidated in the shared context.
    pub fn compose(&self, other: &FuzzyRoughRelation) -> Result<FuzzyRoughRelation> {
        self.shared_context(other)?;
        let rel = self.rel.compose(&other.rel)?;
        match self.context.validate_relation(rel) {
            Ok(frr) => Ok(frr),
            Err(Error::InvalidFuzzyRoughRelation(report)) => {
                let universe = self.context.universe();
                let first = report.violations[0].describe(universe);
                Err(Error::InternalInvariant(format!(
                    "composition of fuzzy rough relations is not a fuzzy rough relation: {first}"
                )))
            }
            Err(e) => Err(e),
        }
    }

    pub fn predicates(&self) -> FrrPredicates {
        relation_predicates(self.context.mu(), &self.rel)
    }

    /// The class `y ↦ μ_R(x, y)` of a similitude relation.
    pub fn similitude_class(&self, anchor: &str) -> Result<RelationClass> {
        let e = self.context.universe().elem(anchor)?;
        similitude_class(self.context.mu(), &self.rel, e)
    }

    pub fn check_similitude_classes(&self) -> Result<SimilitudeReport> {
        check_similitude_classes(self.context.mu(), &self.rel)
    }
}

/// Reflexivity, symmetry and transitivity variants of a relation relative to `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrrPredicates {
    /// Diagonal equals 1 on the support of `μ`.
    pub reflexive: bool,
    /// The diagonal value shared by every supported element, if there is one.
    pub reflexive_order: Option<Grade>,
    /// Each supported diagonal entry dominates its row.
    pub weakly_reflexive: bool,
    /// `μ_R(x, x) >= μ(x)` for every element.
    pub w_reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub similitude: bool,
    pub similitude_order: Option<Grade>,
}

pub fn relation_predicates(mu: &FuzzySet, rel: &FuzzyRelation) -> FrrPredicates {
    let n = rel.size();
    let supported: Vec<Elem> = (0..n).filter(|&x| !mu.get(x).is_zero()).collect();

    let reflexive = supported.iter().all(|&x| rel.get(x, x).is_one());
    let reflexive_order = match supported.split_first() {
        Some((&first, rest)) => {
            let alpha = rel.get(first, first);
            rest.iter().all(|&x| rel.get(x, x) == alpha).then_some(alpha)
        }
        None => None,
    };
    let weakly_reflexive = supported
        .iter()
        .all(|&x| (0..n).all(|y| rel.get(x, x) >= rel.get(x, y)));
    let w_reflexive = (0..n).all(|x| rel.get(x, x) >= mu.get(x));
    let symmetric = rel.is_symmetric();
    let transitive = rel.is_transitive();
    let similitude = reflexive && symmetric && transitive;
    let similitude_order = if symmetric && transitive { reflexive_order } else { None };

    FrrPredicates {
        reflexive,
        reflexive_order,
        weakly_reflexive,
        w_reflexive,
        symmetric,
        transitive,
        similitude,
        similitude_order,
    }
}

/// The fuzzy set `y ↦ μ_R(anchor, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationClass {
    pub anchor: Elem,
    pub grades: FuzzySet,
}

/// Class of `anchor` under a similitude relation of some order.
pub fn similitude_class(mu: &FuzzySet, rel: &FuzzyRelation, anchor: Elem) -> Result<RelationClass> {
    if relation_predicates(mu, rel).similitude_order.is_none() {
        return Err(Error::NotSimilitude);
    }
    if mu.get(anchor).is_zero() {
        return Err(Error::ZeroSupport(mu.universe().symbol(anchor).to_string()));
    }
    Ok(RelationClass {
        anchor,
        grades: rel.row(anchor),
    })
}

/// The four properties of similitude classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassProperty {
    /// `μ_{R_x}(x) = α`.
    AnchorGrade,
    /// `μ_{R_x}(y) = μ_{R_y}(x)`.
    Symmetry,
    /// `μ_{R_x}(y) > 0` and `μ_{R_y}(z) > 0` imply `μ_{R_x}(z) > 0`.
    PositiveChain,
    /// `μ_{R_x}(y) = 0` implies `μ_{R_x} ∧ μ_{R_y}` is the empty fuzzy set.
    DisjointOnZero,
}

impl ClassProperty {
    pub const ALL: [ClassProperty; 4] = [
        ClassProperty::AnchorGrade,
        ClassProperty::Symmetry,
        ClassProperty::PositiveChain,
        ClassProperty::DisjointOnZero,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ClassProperty::AnchorGrade => "(i)",
            ClassProperty::Symmetry => "(ii)",
            ClassProperty::PositiveChain => "(iii)",
            ClassProperty::DisjointOnZero => "(iv)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub property: ClassProperty,
    /// Number of anchor tuples where the property's premise was met.
    pub exercised: usize,
    /// First failing anchor tuple, in universe order.
    pub witness: Option<Vec<Elem>>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn vacuous(&self) -> bool {
        self.exercised == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilitudeReport {
    pub alpha: Grade,
    pub classes: Vec<RelationClass>,
    pub properties: Vec<PropertyResult>,
}

impl SimilitudeReport {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn property(&self, p: ClassProperty) -> &PropertyResult {
        self.properties
            .iter()
            .find(|r| r.property == p)
            .expect("every property is evaluated")
    }
}

/// Evaluates the four class properties for every anchor with positive membership.
///
/// Requires `rel` to be symmetric, transitive and constant on the supported
/// diagonal; the caller's relation need not satisfy the fuzzy rough
/// conditions.
pub fn check_similitude_classes(mu: &FuzzySet, rel: &FuzzyRelation) -> Result<SimilitudeReport> {
    let alpha = relation_predicates(mu, rel)
        .similitude_order
        .ok_or(Error::NotSimilitude)?;
    let n = rel.size();
    let anchors: Vec<Elem> = (0..n).filter(|&x| !mu.get(x).is_zero()).collect();
    let classes: Vec<RelationClass> = anchors
        .iter()
        .map(|&x| RelationClass {
            anchor: x,
            grades: rel.row(x),
        })
        .collect();
    let class = |x: Elem, y: Elem| rel.get(x, y);
    let is_anchor = |e: Elem| !mu.get(e).is_zero();

    let mut anchor_grade = PropertyResult {
        property: ClassProperty::AnchorGrade,
        exercised: 0,
        witness: None,
    };
    let mut symmetry = PropertyResult {
        property: ClassProperty::Symmetry,
        exercised: 0,
        witness: None,
    };
    let mut chain = PropertyResult {
        property: ClassProperty::PositiveChain,
        exercised: 0,
        witness: None,
    };
    let mut disjoint = PropertyResult {
        property: ClassProperty::DisjointOnZero,
        exercised: 0,
        witness: None,
    };

    for &x in &anchors {
        anchor_grade.exercised += 1;
        if class(x, x) != alpha && anchor_grade.witness.is_none() {
            anchor_grade.witness = Some(vec![x]);
        }
        for &y in &anchors {
            symmetry.exercised += 1;
            if class(x, y) != class(y, x) && symmetry.witness.is_none() {
                symmetry.witness = Some(vec![x, y]);
            }
            if class(x, y).is_zero() {
                disjoint.exercised += 1;
                let overlap = (0..n).find(|&u| !class(x, u).min(class(y, u)).is_zero());
                if let (Some(u), None) = (overlap, &disjoint.witness) {
                    disjoint.witness = Some(vec![x, y, u]);
                }
            }
        }
        for y in (0..n).filter(|&y| is_anchor(y) && !class(x, y).is_zero()) {
            for z in (0..n).filter(|&z| !class(y, z).is_zero()) {
                chain.exercised += 1;
                if class(x, z).is_zero() && chain.witness.is_none() {
                    chain.witness = Some(vec![x, y, z]);
                }
            }
        }
    }

    Ok(SimilitudeReport {
        alpha,
        classes,
        properties: vec![anchor_grade, symmetry, chain, disjoint],
    })
}

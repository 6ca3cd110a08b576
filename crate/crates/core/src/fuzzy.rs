//! Fuzzy sets and fuzzy relations on a finite universe, with exact grades.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::{Grade, GradeOp};
use crate::rough::{Elem, ElemSet, Universe};

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// A total membership map `U -> [0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySet {
    universe: Arc<Universe>,
    grades: Vec<Grade>,
}

impl FuzzySet {
    pub fn new(universe: Arc<Universe>, grades: Vec<Grade>) -> Result<Self> {
        if grades.len() != universe.len() {
            return Err(Error::Bounds(
                "fuzzy set",
                format!("{} grades for {} elements", grades.len(), universe.len()),
            ));
        }
        Ok(FuzzySet { universe, grades })
    }

    pub fn from_fn(universe: Arc<Universe>, f: impl FnMut(Elem) -> Grade) -> Self {
        let grades = (0..universe.len()).map(f).collect();
        FuzzySet { universe, grades }
    }

    pub fn constant(universe: Arc<Universe>, g: Grade) -> Self {
        Self::from_fn(universe, |_| g)
    }

    /// The fuzzy set with every grade 0.
    pub fn empty(universe: Arc<Universe>) -> Self {
        Self::constant(universe, Grade::ZERO)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn get(&self, e: Elem) -> Grade {
        self.grades[e]
    }

    pub fn grade(&self, symbol: &str) -> Result<Grade> {
        Ok(self.grades[self.universe.elem(symbol)?])
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn is_empty_set(&self) -> bool {
        self.grades.iter().all(Grade::is_zero)
    }

    /// Elements with positive grade.
    pub fn support(&self) -> ElemSet {
        self.grades
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(e, _)| e)
            .collect()
    }

    pub fn pointwise(&self, op: GradeOp, other: &FuzzySet) -> Result<FuzzySet> {
        same_universe(&self.universe, &other.universe)?;
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| a.combine(op, b))
            .collect();
        Ok(FuzzySet {
            universe: self.universe.clone(),
            grades,
        })
    }

    /// The product `Y × Y`: `(x, y) ↦ min(μ(x), μ(y))`.
    pub fn square(&self) -> FuzzyRelation {
        FuzzyRelation::from_fn(self.universe.clone(), |x, y| self.grades[x].min(self.grades[y]))
    }
}

/// A total membership map `U × U -> [0, 1]`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRelation {
    universe: Arc<Universe>,
    grades: Vec<Grade>,
}

/// The classical predicates on a fuzzy relation over a fuzzy set `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzyPredicates {
    /// `μ_R(x, x) = 1` wherever `μ_A(x) > 0`.
    pub reflexive: bool,
    pub symmetric: bool,
    /// `R ⊇ R ∘ R`, pointwise.
    pub transitive: bool,
}

impl FuzzyRelation {
    pub fn new(universe: Arc<Universe>, grades: Vec<Grade>) -> Result<Self> {
        let n = universe.len();
        if grades.len() != n * n {
            return Err(Error::Bounds(
                "fuzzy relation",
                format!("{} grades for {n}x{n} pairs", grades.len()),
            ));
        }
        Ok(FuzzyRelation { universe, grades })
    }

    pub fn from_fn(universe: Arc<Universe>, mut f: impl FnMut(Elem, Elem) -> Grade) -> Self {
        let n = universe.len();
        let mut grades = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                grades.push(f(x, y));
            }
        }
        FuzzyRelation { universe, grades }
    }

    pub fn constant(universe: Arc<Universe>, g: Grade) -> Self {
        Self::from_fn(universe, |_, _| g)
    }

    /// Crisp equality: 1 on the diagonal, 0 elsewhere.
    pub fn identity(universe: Arc<Universe>) -> Self {
        Self::from_fn(universe, |x, y| if x == y { Grade::ONE } else { Grade::ZERO })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn get(&self, x: Elem, y: Elem) -> Grade {
        self.grades[x * self.size() + y]
    }

    pub fn set(&mut self, x: Elem, y: Elem, g: Grade) {
        let n = self.size();
        self.grades[x * n + y] = g;
    }

    pub fn grade(&self, x: &str, y: &str) -> Result<Grade> {
        Ok(self.get(self.universe.elem(x)?, self.universe.elem(y)?))
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    /// Row-major iteration over `((x, y), grade)`.
    pub fn cells(&self) -> impl Iterator<Item = ((Elem, Elem), Grade)> + '_ {
        let n = self.size();
        self.grades
            .iter()
            .enumerate()
            .map(move |(i, &g)| ((i / n, i % n), g))
    }

    /// The fuzzy set `y ↦ μ_R(x, y)`.
    pub fn row(&self, x: Elem) -> FuzzySet {
        let n = self.size();
        FuzzySet {
            universe: self.universe.clone(),
            grades: self.grades[x * n..(x + 1) * n].to_vec(),
        }
    }

    pub fn pointwise(&self, op: GradeOp, other: &FuzzyRelation) -> Result<FuzzyRelation> {
        same_universe(&self.universe, &other.universe)?;
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| a.combine(op, b))
            .collect();
        Ok(FuzzyRelation {
            universe: self.universe.clone(),
            grades,
        })
    }

    /// Max-min composition: `(x, y) ↦ max_u min(self(x, u), other(u, y))`.
    pub fn compose(&self, other: &FuzzyRelation) -> Result<FuzzyRelation> {
        same_universe(&self.universe, &other.universe)?;
        let n = self.size();
        Ok(FuzzyRelation::from_fn(self.universe.clone(), |x, y| {
            (0..n)
                .map(|u| self.get(x, u).min(other.get(u, y)))
                .max()
                .unwrap_or(Grade::ZERO)
        }))
    }

    /// First pair, in row-major order, where `self` exceeds `bound`.
    pub fn excess_over(&self, bound: &FuzzyRelation) -> Result<Option<(Elem, Elem)>> {
        same_universe(&self.universe, &bound.universe)?;
        Ok(self
            .cells()
            .find(|&((x, y), g)| g > bound.get(x, y))
            .map(|(p, _)| p))
    }

    /// `self <= bound` at every pair.
    pub fn is_dominated_by(&self, bound: &FuzzyRelation) -> Result<bool> {
        Ok(self.excess_over(bound)?.is_none())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (x + 1..n).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// `self ⊇ self ∘ self` pointwise.
    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let here = self.get(x, y);
                (0..n).all(|u| self.get(x, u).min(self.get(u, y)) <= here)
            })
        })
    }

    pub fn predicates(&self, support_of: &FuzzySet) -> Result<FuzzyPredicates> {
        same_universe(&self.universe, &support_of.universe)?;
        let reflexive = (0..self.size())
            .filter(|&x| !support_of.get(x).is_zero())
            .all(|x| self.get(x, x).is_one());
        Ok(FuzzyPredicates {
            reflexive,
            symmetric: self.is_symmetric(),
            transitive: self.is_transitive(),
        })
    }
}

//! Instance generators: partitions, rough subsets, fuzzy rough sets on the
//! `1/d` grid, and the grid of fuzzy rough relations over one context.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyRelation, FuzzySet};
use crate::fuzzy_rough::{FuzzyRoughRelation, FuzzyRoughSet};
use crate::grade::Grade;
use crate::rough::{ApproxResult, ApproximationSpace, Elem, ElemSet, Region, Universe};

pub const MAX_UNIVERSE: usize = 4;
pub const MIN_DENOMINATOR: u64 = 2;
pub const MAX_DENOMINATOR: u64 = 16;

pub(crate) fn check_universe_size(n: usize) -> Result<()> {
    if (1..=MAX_UNIVERSE).contains(&n) {
        Ok(())
    } else {
        Err(Error::Bounds("universe size", format!("{n} not in 1..={MAX_UNIVERSE}")))
    }
}

pub(crate) fn check_denominator(d: u64) -> Result<()> {
    if (MIN_DENOMINATOR..=MAX_DENOMINATOR).contains(&d) {
        Ok(())
    } else {
        Err(Error::Bounds(
            "grade denominator",
            format!("{d} not in {MIN_DENOMINATOR}..={MAX_DENOMINATOR}"),
        ))
    }
}

/// Every partition of `{a, b, ...}` with `n` elements, in restricted-growth order.
///
/// The count is the Bell number `B(n)`.
pub fn enumerate_spaces(n: usize) -> Result<Vec<ApproximationSpace>> {
    check_universe_size(n)?;
    let universe = Arc::new(Universe::letters(n)?);
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        out.push(ApproximationSpace::from_labels(universe.clone(), &labels)?);
        // Advance the restricted growth string: labels[i] <= 1 + max(labels[..i]).
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// Every rough subset of the universe, ordered by bitmask.
pub fn enumerate_rough_contexts(space: &ApproximationSpace) -> Vec<(ElemSet, ApproxResult)> {
    let n = space.len();
    (0u64..1 << n)
        .filter_map(|mask| {
            let x = ElemSet::from_mask(mask, n);
            let approx = space.approx_set(&x).expect("mask stays inside the universe");
            approx.is_rough().then_some((x, approx))
        })
        .collect()
}

/// Interior grid values `k/d`, `1 <= k < d`.
fn interior_grid(d: u64) -> Vec<Grade> {
    (1..d).map(|k| Grade::grid(k, d)).collect()
}

/// Fuzzy rough sets over `X` whose boundary grades range over the interior of the `1/d` grid.
///
/// Boundary elements vary in odometer order, last element fastest.
pub fn enumerate_frs(
    space: &Arc<ApproximationSpace>,
    x: &ElemSet,
    d: u64,
) -> Result<Vec<FuzzyRoughSet>> {
    check_denominator(d)?;
    let approx = space.approx_set(x)?;
    if !approx.is_rough() {
        return Err(Error::NotRough);
    }
    let values = interior_grid(d);
    let boundary: Vec<Elem> = approx.boundary.iter().collect();
    let mut digits = vec![0usize; boundary.len()];
    let mut out = Vec::new();
    loop {
        let mut grades: Vec<Grade> = (0..space.len())
            .map(|e| if approx.lower.contains(e) { Grade::ONE } else { Grade::ZERO })
            .collect();
        for (&e, &k) in boundary.iter().zip(&digits) {
            grades[e] = values[k];
        }
        let mu = FuzzySet::new(space.universe().clone(), grades)?;
        out.push(FuzzyRoughSet::new(space.clone(), x.clone(), mu)?);
        if !odometer_step(&mut digits, values.len()) {
            return Ok(out);
        }
    }
}

fn odometer_step(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// The grid of valid fuzzy rough relations over one context.
///
/// Cells in the lower rectangle are fixed at 1, cells outside the upper
/// rectangle at 0; each boundary cell takes any interior grid value at or
/// below its dominance bound. Relations are indexed in mixed radix over the
/// boundary cells, row-major, last cell fastest.
#[derive(Debug, Clone)]
pub struct FrrGrid {
    context: Arc<FuzzyRoughSet>,
    base: FuzzyRelation,
    cells: Vec<((Elem, Elem), Vec<Grade>)>,
    count: u128,
}

impl FrrGrid {
    pub fn new(context: Arc<FuzzyRoughSet>, d: u64) -> Result<Self> {
        check_denominator(d)?;
        let values = interior_grid(d);
        let universe = context.universe().clone();
        let base = FuzzyRelation::from_fn(universe.clone(), |x, y| match context.region(x, y) {
            Region::Lower => Grade::ONE,
            Region::Boundary | Region::Outside => Grade::ZERO,
        });
        let n = universe.len();
        let mut cells = Vec::new();
        let mut count: u128 = 1;
        for x in 0..n {
            for y in 0..n {
                if context.region(x, y) != Region::Boundary {
                    continue;
                }
                let bound = context.bound().get(x, y);
                let admissible: Vec<Grade> = values.iter().copied().filter(|&g| g <= bound).collect();
                if admissible.is_empty() {
                    return Err(Error::EmptyGrid(
                        universe.symbol(x).to_string(),
                        universe.symbol(y).to_string(),
                    ));
                }
                count = count.saturating_mul(admissible.len() as u128);
                cells.push(((x, y), admissible));
            }
        }
        Ok(FrrGrid {
            context,
            base,
            cells,
            count,
        })
    }

    pub fn context(&self) -> &Arc<FuzzyRoughSet> {
        &self.context
    }

    /// Number of relations in the grid (saturating at `u128::MAX`).
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn free_cells(&self) -> usize {
        self.cells.len()
    }

    /// The relation at mixed-radix position `index`.
    pub fn relation(&self, mut index: u128) -> FuzzyRoughRelation {
        debug_assert!(index < self.count);
        let mut rel = self.base.clone();
        for ((x, y), values) in self.cells.iter().rev() {
            let radix = values.len() as u128;
            rel.set(*x, *y, values[(index % radix) as usize]);
            index /= radix;
        }
        FuzzyRoughRelation::from_grid(self.context.clone(), rel)
    }

    /// A uniformly random relation of the grid.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FuzzyRoughRelation {
        let mut rel = self.base.clone();
        for ((x, y), values) in &self.cells {
            rel.set(*x, *y, values[rng.gen_range(0..values.len())]);
        }
        FuzzyRoughRelation::from_grid(self.context.clone(), rel)
    }

    /// A uniformly random grid index.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> u128 {
        self.cells.iter().fold(0u128, |acc, (_, values)| {
            acc * values.len() as u128 + rng.gen_range(0..values.len()) as u128
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = FuzzyRoughRelation> + '_ {
        (0..self.count).map(|i| self.relation(i))
    }
}

/// Output of [`enumerate_frr`].
#[derive(Debug, Clone)]
pub struct FrrEnumeration {
    pub relations: Vec<FuzzyRoughRelation>,
    /// True when the grid exceeded the budget and `relations` is a seeded sample.
    pub sampled: bool,
    pub grid_size: u128,
}

/// All relations of the grid, or `budget` seeded samples when the grid is larger.
pub fn enumerate_frr(
    frs: Arc<FuzzyRoughSet>,
    d: u64,
    budget: Option<u64>,
    seed: u64,
) -> Result<FrrEnumeration> {
    let grid = FrrGrid::new(frs, d)?;
    let grid_size = grid.count();
    match budget {
        Some(cap) if grid_size > cap as u128 => {
            let mut rng = super::seeded_rng(seed, 0, 0);
            let relations = (0..cap).map(|_| grid.sample(&mut rng)).collect();
            Ok(FrrEnumeration {
                relations,
                sampled: true,
                grid_size,
            })
        }
        _ => Ok(FrrEnumeration {
            relations: grid.iter().collect(),
            sampled: false,
            grid_size,
        }),
    }
}

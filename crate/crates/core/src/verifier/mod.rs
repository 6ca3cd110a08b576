//! Bounded search for counterexamples to the propositions in [`catalog`].
//!
//! The search walks every partition of universes up to `max_universe`
//! elements, every rough subset, every fuzzy rough set on the `1/d` grid and
//! the grid of fuzzy rough relations over that context. Bundles of one, two
//! or three relations are drawn from a single context. When a context has
//! more bundles than the budget allows, a seeded uniform sample is checked
//! instead and the verdict is marked as sampled.
//!
//! Results are merged in canonical instance order, so reports are identical
//! for identical configurations whether or not checks ran in parallel.

pub mod catalog;
pub mod enumerate;
mod par;
mod report;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fuzzy_rough::{FuzzyRoughRelation, FuzzyRoughSet};

pub use catalog::{check, Failure, Outcome, PropositionId};
pub use enumerate::{
    enumerate_frr, enumerate_frs, enumerate_rough_contexts, enumerate_spaces, FrrEnumeration,
    FrrGrid,
};
pub use report::{Counterexample, Status, Verdict, WitnessRecord};

/// Counterexamples kept per proposition; totals are always exact.
pub const COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest universe searched; every size from 1 up to this is included.
    pub max_universe: usize,
    /// Grades range over multiples of `1 / grade_denominator`.
    pub grade_denominator: u64,
    /// Bundles checked per context before switching to sampling; `None` is always exhaustive.
    pub relation_budget: Option<u64>,
    pub seed: u64,
    pub propositions: Vec<PropositionId>,
    /// Run checks on the rayon pool. Ignored without the `parallel` feature.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(max_universe: usize, grade_denominator: u64, propositions: Vec<PropositionId>) -> Self {
        SearchConfig {
            max_universe,
            grade_denominator,
            relation_budget: None,
            seed: 0,
            propositions,
            parallel: true,
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.relation_budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        enumerate::check_universe_size(self.max_universe)?;
        enumerate::check_denominator(self.grade_denominator)?;
        if self.propositions.is_empty() {
            return Err(crate::Error::Bounds("proposition list", "empty".into()));
        }
        Ok(())
    }
}

/// Deterministic generator for one (seed, proposition, context) stream.
pub(crate) fn seeded_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// One fuzzy rough set together with its relation grid.
struct SearchContext {
    universe_size: usize,
    grid: FrrGrid,
}

fn build_contexts(config: &SearchConfig) -> Result<(Vec<SearchContext>, u64)> {
    let d = config.grade_denominator;
    let mut contexts = Vec::new();
    let mut skipped = 0u64;
    for n in 1..=config.max_universe {
        for space in enumerate_spaces(n)? {
            let space = Arc::new(space);
            for (x, _) in enumerate_rough_contexts(&space) {
                for frs in enumerate_frs(&space, &x, d)? {
                    match FrrGrid::new(Arc::new(frs), d) {
                        Ok(grid) => contexts.push(SearchContext { universe_size: n, grid }),
                        Err(crate::Error::EmptyGrid(..)) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok((contexts, skipped))
}

/// Tally of one context for one proposition.
#[derive(Default)]
struct ContextTally {
    checked: u64,
    filtered: u64,
    passed: u64,
    failed: u64,
    sampled: bool,
    counterexamples: Vec<Counterexample>,
}

fn bundle_from_indices(grid: &FrrGrid, indices: &[u128]) -> Vec<FuzzyRoughRelation> {
    indices.iter().map(|&i| grid.relation(i)).collect()
}

fn tally_context(
    prop: PropositionId,
    ctx: &SearchContext,
    ordinal: usize,
    config: &SearchConfig,
) -> Result<ContextTally> {
    let arity = prop.arity() as u32;
    let grid = &ctx.grid;
    let total = grid.count().checked_pow(arity);
    let exhaustive = match (config.relation_budget, total) {
        (None, Some(_)) => true,
        (Some(cap), Some(t)) => t <= cap as u128,
        (_, None) => false,
    };

    let outcomes: Vec<(Vec<u128>, Outcome)> = if exhaustive {
        let total = total.expect("exhaustive implies a finite count");
        let relations: Vec<FuzzyRoughRelation> = grid.iter().collect();
        let k = grid.count();
        par::map_range(total as usize, config.parallel, |b| {
            let mut rest = b as u128;
            let mut idx = vec![0u128; arity as usize];
            for slot in idx.iter_mut().rev() {
                *slot = rest % k;
                rest /= k;
            }
            let bundle: Vec<FuzzyRoughRelation> =
                idx.iter().map(|&i| relations[i as usize].clone()).collect();
            check(prop, &bundle).map(|o| (idx, o))
        })
        .into_iter()
        .collect::<Result<_>>()?
    } else {
        let cap = config.relation_budget.unwrap_or(0);
        let mut rng = seeded_rng(config.seed, prop.ordinal() as u64, ordinal as u64);
        let picks: Vec<Vec<u128>> = (0..cap)
            .map(|_| (0..arity).map(|_| grid.sample_index(&mut rng)).collect())
            .collect();
        par::map_range(picks.len(), config.parallel, |b| {
            let bundle = bundle_from_indices(grid, &picks[b]);
            check(prop, &bundle).map(|o| (picks[b].clone(), o))
        })
        .into_iter()
        .collect::<Result<_>>()?
    };

    let mut tally = ContextTally {
        sampled: !exhaustive,
        ..ContextTally::default()
    };
    for (indices, outcome) in outcomes {
        tally.checked += 1;
        match outcome {
            Outcome::Filtered => tally.filtered += 1,
            Outcome::Pass => tally.passed += 1,
            Outcome::Fail(failure) => {
                tally.failed += 1;
                if tally.counterexamples.len() < COUNTEREXAMPLE_CAP {
                    let bundle = bundle_from_indices(grid, &indices);
                    tally.counterexamples.push(Counterexample::new(
                        prop,
                        ctx.universe_size,
                        config.grade_denominator,
                        &bundle,
                        &failure,
                    ));
                }
            }
        }
    }
    Ok(tally)
}

/// Runs every requested proposition over the configured search space.
pub fn search(config: &SearchConfig) -> Result<Vec<Verdict>> {
    config.validate()?;
    let (contexts, skipped) = build_contexts(config)?;
    let mut verdicts = Vec::with_capacity(config.propositions.len());
    for &prop in &config.propositions {
        let tallies = par::map_range(contexts.len(), config.parallel, |i| {
            tally_context(prop, &contexts[i], i, config)
        });
        let mut verdict = Verdict::empty(prop, config);
        verdict.contexts = contexts.len() as u64;
        verdict.skipped_contexts = skipped;
        for tally in tallies {
            let tally = tally?;
            verdict.checked += tally.checked;
            verdict.filtered += tally.filtered;
            verdict.passed += tally.passed;
            verdict.failed += tally.failed;
            verdict.sampled |= tally.sampled;
            for c in tally.counterexamples {
                if verdict.counterexamples.len() < COUNTEREXAMPLE_CAP {
                    verdict.counterexamples.push(c);
                }
            }
        }
        verdict.finish();
        verdicts.push(verdict);
    }
    Ok(verdicts)
}

/// Checks `count` random bundles drawn from random contexts of size exactly `n`.
///
/// Each draw picks a partition, a rough subset, boundary grades and the
/// bundle's relations uniformly from the `1/d` grid.
pub fn sample_random(
    prop: PropositionId,
    n: usize,
    d: u64,
    count: u64,
    seed: u64,
) -> Result<Verdict> {
    enumerate::check_universe_size(n)?;
    enumerate::check_denominator(d)?;
    let spaces: Vec<_> = enumerate_spaces(n)?
        .into_iter()
        .map(Arc::new)
        .map(|s| {
            let xs = enumerate_rough_contexts(&s);
            (s, xs)
        })
        .filter(|(_, xs)| !xs.is_empty())
        .collect();
    let config = SearchConfig::new(n, d, vec![prop]).with_seed(seed).with_budget(Some(count));
    let mut verdict = Verdict::empty(prop, &config);
    verdict.sampled = true;
    if spaces.is_empty() {
        verdict.finish();
        return Ok(verdict);
    }
    let mut rng = seeded_rng(seed, u64::MAX, prop.ordinal() as u64);
    use rand::Rng;
    for _ in 0..count {
        let (space, xs) = &spaces[rng.gen_range(0..spaces.len())];
        let (x, approx) = &xs[rng.gen_range(0..xs.len())];
        let mut grades: Vec<_> = (0..n)
            .map(|e| if approx.lower.contains(e) { crate::Grade::ONE } else { crate::Grade::ZERO })
            .collect();
        for e in approx.boundary.iter() {
            grades[e] = crate::Grade::grid(rng.gen_range(1..d), d);
        }
        let mu = crate::FuzzySet::new(space.universe().clone(), grades)?;
        let frs = Arc::new(FuzzyRoughSet::new(space.clone(), x.clone(), mu)?);
        let grid = FrrGrid::new(frs, d)?;
        let bundle: Vec<_> = (0..prop.arity()).map(|_| grid.sample(&mut rng)).collect();
        verdict.contexts += 1;
        verdict.checked += 1;
        match check(prop, &bundle)? {
            Outcome::Filtered => verdict.filtered += 1,
            Outcome::Pass => verdict.passed += 1,
            Outcome::Fail(f) => {
                verdict.failed += 1;
                if verdict.counterexamples.len() < COUNTEREXAMPLE_CAP {
                    verdict.counterexamples.push(Counterexample::new(prop, n, d, &bundle, &f));
                }
            }
        }
    }
    verdict.finish();
    Ok(verdict)
}

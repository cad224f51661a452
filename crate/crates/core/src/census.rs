//! Exhaustive child-count census over `S_n`, a seeded sampling estimator
//! for sizes beyond exhaustion, and the combined verification suite.
//!
//! Counts are always obtained by building the tree of every permutation.
//! `S_n` is split into contiguous lexicographic rank intervals, one per
//! worker; each worker unranks its start and streams through successors
//! with private counters that are summed at the end, so the table does not
//! depend on the number of workers or on scheduling.

use std::thread;

use log::warn;
use thiserror::Error;

use crate::perm::{factorial, random_permutation, unrank, LexIndex, MAX_RANKED_N};
use crate::tree::{MinMaxTree, TreeBuilder, Variant};

/// Default upper bound for [`census_exact`].
pub const DEFAULT_MAX_N: usize = 13;
/// Upper bound for [`census_exact_override`]; `20!` still fits in `u64`.
pub const OVERRIDE_MAX_N: usize = MAX_RANKED_N;
/// Upper bound for [`verify_suite`].
pub const VERIFY_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {0} is too small; the census needs n >= 3")]
    NTooSmall(usize),
    #[error("n = {n} exceeds the limit of {limit}")]
    NTooLarge { n: usize, limit: usize },
    #[error("at least one worker is required")]
    NoWorkers,
    #[error("at least one trial is required")]
    NoTrials,
}

/// Exact counts `d[i][j]`: the number of permutations of `S_n` whose
/// position `i` has exactly `j` children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    n: usize,
    variant: Variant,
    total: u64,
    d: Vec<[u64; 3]>,
}

impl CensusTable {
    fn zero(n: usize, variant: Variant) -> Self {
        Self {
            n,
            variant,
            total: 0,
            d: vec![[0; 3]; n],
        }
    }

    fn absorb(&mut self, other: &CensusTable) {
        self.total += other.total;
        for (row, add) in self.d.iter_mut().zip(&other.d) {
            for j in 0..3 {
                row[j] += add[j];
            }
        }
    }

    #[inline]
    fn record(&mut self, t: &MinMaxTree) {
        self.total += 1;
        for (k, row) in self.d.iter_mut().enumerate() {
            row[t.child_count_unchecked(k + 1)] += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of permutations counted; `n!` for a complete census.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Leaf counts for positions `1..=n`, in order.
    pub fn leaf_counts(&self) -> Vec<u64> {
        self.d.iter().map(|row| row[0]).collect()
    }

    /// Rows `[d_i0, d_i1, d_i2]` for positions `1..=n`, in order.
    pub fn d(&self) -> &[[u64; 3]] {
        &self.d
    }

    /// Row for 1-based position `i`.
    pub fn row(&self, i: usize) -> [u64; 3] {
        self.d[i - 1]
    }

    /// Whether the two tables hold the same counts, ignoring the variant tag.
    pub fn same_counts(&self, other: &CensusTable) -> bool {
        self.n == other.n && self.total == other.total && self.d == other.d
    }
}

fn count_interval(n: usize, variant: Variant, start: u64, end: u64) -> CensusTable {
    let mut table = CensusTable::zero(n, variant);
    if start >= end {
        return table;
    }
    let mut builder = TreeBuilder::new(variant);
    let mut p = unrank(n, LexIndex(start)).expect("start is below n!");
    let mut tree = builder.build(&p);
    let mut k = start;
    loop {
        table.record(&tree);
        k += 1;
        if k == end {
            break;
        }
        let stepped = p.advance();
        debug_assert!(stepped, "interval runs past the last permutation");
        builder.build_into(&p, &mut tree);
    }
    table
}

/// `[start, end)` rank interval of worker `k` out of `workers`.
fn interval(total: u64, workers: usize, k: usize) -> (u64, u64) {
    let cut = |k: usize| (total as u128 * k as u128 / workers as u128) as u64;
    (cut(k), cut(k + 1))
}

fn census_checked(
    n: usize,
    variant: Variant,
    workers: usize,
    limit: usize,
) -> Result<CensusTable, CensusError> {
    if n < 3 {
        return Err(CensusError::NTooSmall(n));
    }
    if n > limit {
        return Err(CensusError::NTooLarge { n, limit });
    }
    if workers == 0 {
        return Err(CensusError::NoWorkers);
    }
    let total = factorial(n).expect("n <= 20");
    let workers = workers.min(total as usize);
    let parts: Vec<CensusTable> = if workers == 1 {
        vec![count_interval(n, variant, 0, total)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|k| {
                    let (start, end) = interval(total, workers, k);
                    s.spawn(move || count_interval(n, variant, start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .collect()
        })
    };
    let mut table = CensusTable::zero(n, variant);
    for part in &parts {
        table.absorb(part);
    }
    debug_assert_eq!(table.total, total);
    Ok(table)
}

/// Exhaustive census for `3 <= n <= 13`.
pub fn census_exact(
    n: usize,
    variant: Variant,
    workers: usize,
) -> Result<CensusTable, CensusError> {
    census_checked(n, variant, workers, DEFAULT_MAX_N)
}

/// Exhaustive census with the ceiling raised to `n <= 20`. Anything past
/// the default ceiling logs a warning; `n = 14` is already ~10^11 tree builds.
pub fn census_exact_override(
    n: usize,
    variant: Variant,
    workers: usize,
) -> Result<CensusTable, CensusError> {
    if n > DEFAULT_MAX_N && n <= OVERRIDE_MAX_N {
        warn!(
            "exhaustive census at n = {n} enumerates {} permutations",
            factorial(n).unwrap_or(u64::MAX)
        );
    }
    census_checked(n, variant, workers, OVERRIDE_MAX_N)
}

/// Monte Carlo estimate of the leaf probability at every position.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateTable {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Leaf hits per position `1..=n`.
    pub leaf_hits: Vec<u64>,
}

impl EstimateTable {
    /// Estimated leaf probability at 1-based position `i`.
    pub fn estimate(&self, i: usize) -> f64 {
        self.leaf_hits[i - 1] as f64 / self.trials as f64
    }

    /// `sqrt(q (1 - q) / trials)` at position `i`.
    pub fn std_error(&self, i: usize) -> f64 {
        let q = self.estimate(i);
        (q * (1.0 - q) / self.trials as f64).sqrt()
    }

    pub fn estimates(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.estimate(i)).collect()
    }

    pub fn std_errors(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.std_error(i)).collect()
    }
}

fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |w| w.get())
}

/// Samples `trials` permutations; trial `t` is `random_permutation(n, seed, t)`,
/// so the table is a pure function of `(n, trials, seed)`.
pub fn estimate_leaf_probabilities(
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<EstimateTable, CensusError> {
    if n < 3 {
        return Err(CensusError::NTooSmall(n));
    }
    if trials == 0 {
        return Err(CensusError::NoTrials);
    }
    let workers = default_workers().min(trials as usize).max(1);
    let hits = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let (start, end) = interval(trials, workers, k);
                s.spawn(move || {
                    let mut builder = TreeBuilder::new(Variant::MinMax);
                    let mut hits = vec![0u64; n];
                    for t in start..end {
                        let tree = builder.build(&random_permutation(n, seed, t));
                        for (k, h) in hits.iter_mut().enumerate() {
                            *h += u64::from(tree.is_leaf(k + 1));
                        }
                    }
                    hits
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .fold(vec![0u64; n], |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                acc
            })
    });
    Ok(EstimateTable {
        n,
        trials,
        seed,
        leaf_hits: hits,
    })
}

mod verify;

pub use verify::{verify_suite, verify_suite_with, CheckOutcome, VerifyReport};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_counts() {
        let t = census_exact(4, Variant::MinMax, 1).unwrap();
        assert_eq!(t.total(), 24);
        assert_eq!(t.leaf_counts(), vec![8, 8, 0, 24]);
        assert_eq!(t.row(2), [8, 8, 8]);
        assert_eq!(t.row(1), [8, 16, 0]);
        assert_eq!(t.row(3), [0, 16, 8]);
        assert_eq!(t.row(4), [24, 0, 0]);
    }

    #[test]
    fn n3_counts() {
        let t = census_exact(3, Variant::MinMax, 2).unwrap();
        assert_eq!(t.leaf_counts(), vec![2, 0, 6]);
    }

    #[test]
    fn limits() {
        assert_eq!(
            census_exact(2, Variant::MinMax, 1),
            Err(CensusError::NTooSmall(2))
        );
        assert_eq!(
            census_exact(14, Variant::MinMax, 1),
            Err(CensusError::NTooLarge { n: 14, limit: 13 })
        );
        assert_eq!(
            census_exact_override(21, Variant::MinMax, 1),
            Err(CensusError::NTooLarge { n: 21, limit: 20 })
        );
        assert_eq!(
            census_exact(5, Variant::MinMax, 0),
            Err(CensusError::NoWorkers)
        );
    }

    #[test]
    fn more_workers_than_permutations() {
        let a = census_exact(3, Variant::MinMax, 1).unwrap();
        let b = census_exact(3, Variant::MinMax, 64).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intervals_cover_everything() {
        for workers in 1..=9 {
            let mut next = 0;
            for k in 0..workers {
                let (s, e) = interval(5040, workers, k);
                assert_eq!(s, next);
                assert!(e - s <= 5040 / workers as u64 + 1);
                next = e;
            }
            assert_eq!(next, 5040);
        }
    }

    #[test]
    fn estimator_edges_are_exact() {
        let e = estimate_leaf_probabilities(3, 500, 9).unwrap();
        assert_eq!(e.estimate(3), 1.0);
        assert_eq!(e.estimate(2), 0.0);
        assert_eq!(e.std_error(3), 0.0);
        assert_eq!(e, estimate_leaf_probabilities(3, 500, 9).unwrap());
    }
}

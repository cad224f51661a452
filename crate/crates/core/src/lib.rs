//! Minmax trees of permutations and the involutions `psi_i` acting on them.
//!
//! * [`perm`]: permutations, patterns, lexicographic ranking, seeded sampling.
//! * [`tree`]: minmax and min1-min2 trees, with a quadratic reference builder
//!   and a sparse-table builder.
//! * [`action`]: `psi_i`, compositions, fixed points and orbits.
//! * [`census`]: exhaustive child-count tables over `S_n`, a sampling
//!   estimator, and the verification suite.

pub mod action;
pub mod census;
pub mod perm;
mod sparse;
pub mod tree;

pub use action::{fixed_positions, orbit, psi, psi_set, ActionError, GeneratorSet, OrbitRecord};
pub use census::{
    census_exact, census_exact_override, estimate_leaf_probabilities, verify_suite,
    verify_suite_with, CensusError, CensusTable, CheckOutcome, EstimateTable, VerifyReport,
};
pub use perm::{
    factorial, parse_permutation, pattern_of, random_permutation, rank, relabel_order_isomorphic,
    successor, unrank, LexIndex, PermError, Permutation, Word,
};
pub use tree::{
    build_min12, build_minmax, build_minmax_fast, build_tree, MinMaxTree, NodeKind, ShapeSignature,
    TreeBuilder, TreeError, Variant,
};

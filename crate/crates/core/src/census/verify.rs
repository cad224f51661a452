//! One-shot verification of every counting and structural property.
//!
//! The operator under test is injected so that a deliberately broken `psi`
//! can be run through the same checks as the real one.

use std::fmt;

use super::{census_exact, default_workers, CensusError, CensusTable, VERIFY_MAX_N};
use crate::action::{orbit, psi_on_tree, GeneratorSet};
use crate::perm::{factorial, Permutation};
use crate::tree::{build_min12, build_minmax, MinMaxTree, NodeKind, TreeBuilder, Variant};

/// Structural and builder checks run exhaustively up to this size.
pub const STRUCTURE_MAX_N: usize = 8;
/// Per-generator action checks run exhaustively up to this size.
pub const ACTION_MAX_N: usize = 7;
/// Pairwise commutation and orbit-size checks run up to this size.
pub const COMMUTE_MAX_N: usize = 6;
/// Min1-min2 census equality is checked up to this size.
pub const MIN12_MAX_N: usize = 8;

type Psi<'a> = dyn Fn(&Permutation, usize) -> Permutation + Sync + 'a;

/// Result of one named check at one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub n: usize,
    pub passed: bool,
    /// Permutation that violates a per-permutation check. Count checks have
    /// no single witness and report through `detail` instead.
    pub counterexample: Option<Permutation>,
    pub detail: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} n={}", self.name, self.n)?;
        if let Some(p) = &self.counterexample {
            write!(f, " counterexample=\"{p}\"")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n_max: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str, n: usize) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name && c.n == n)
    }
}

/// Runs the full suite for `3 <= n <= n_max` against the real `psi`.
pub fn verify_suite(n_max: usize) -> Result<VerifyReport, CensusError> {
    let real = |p: &Permutation, i: usize| psi_on_tree(&build_minmax(p), i);
    verify_suite_with(n_max, &real)
}

/// Same as [`verify_suite`] with a caller-supplied operator in place of `psi`.
pub fn verify_suite_with(n_max: usize, psi: &Psi<'_>) -> Result<VerifyReport, CensusError> {
    if n_max < 3 {
        return Err(CensusError::NTooSmall(n_max));
    }
    if n_max > VERIFY_MAX_N {
        return Err(CensusError::NTooLarge {
            n: n_max,
            limit: VERIFY_MAX_N,
        });
    }
    let workers = default_workers();
    let mut checks = Vec::new();
    for n in 3..=n_max {
        let table = census_exact(n, Variant::MinMax, workers)?;
        checks.push(count_outcome(
            "theorem-leaf-counts",
            n,
            theorem_counts(&table),
        ));
        if n >= 4 {
            checks.push(count_outcome(
                "corollary-child-counts",
                n,
                corollary_counts(&table),
            ));
        }
        checks.push(count_outcome("edge-identities", n, edge_identities(&table)));
        if n <= MIN12_MAX_N {
            let other = census_exact(n, Variant::Min1Min2, workers)?;
            let res = if other.same_counts(&table) {
                Ok(())
            } else {
                Err(format!("min12 {:?} vs minmax {:?}", other.d(), table.d()))
            };
            checks.push(count_outcome("min12-census-equality", n, res));
        }
        if n <= STRUCTURE_MAX_N {
            checks.extend(exhaustive_checks(n, psi));
        }
    }
    Ok(VerifyReport { n_max, checks })
}

fn count_outcome(name: &'static str, n: usize, res: Result<(), String>) -> CheckOutcome {
    CheckOutcome {
        name,
        n,
        passed: res.is_ok(),
        counterexample: None,
        detail: res.err(),
    }
}

fn expect_row(table: &CensusTable, i: usize, want: [u64; 3]) -> Result<(), String> {
    let got = table.row(i);
    if got == want {
        Ok(())
    } else {
        Err(format!("d[{i}] = {got:?}, expected {want:?}"))
    }
}

fn theorem_counts(table: &CensusTable) -> Result<(), String> {
    let n = table.n();
    let total = factorial(n).expect("n <= 10");
    let leaves = table.leaf_counts();
    for i in 1..=n {
        let want = match i {
            _ if i == n => total,
            _ if i == n - 1 => 0,
            _ => total / 3,
        };
        if leaves[i - 1] != want {
            return Err(format!(
                "leaf count at {i} is {}, expected {want}",
                leaves[i - 1]
            ));
        }
    }
    Ok(())
}

fn corollary_counts(table: &CensusTable) -> Result<(), String> {
    let n = table.n();
    let third = factorial(n).expect("n <= 10") / 3;
    (2..=n - 2).try_for_each(|i| expect_row(table, i, [third; 3]))
}

fn edge_identities(table: &CensusTable) -> Result<(), String> {
    let n = table.n();
    let total = factorial(n).expect("n <= 10");
    let third = total / 3;
    expect_row(table, 1, [third, 2 * third, 0])?;
    expect_row(table, n - 1, [0, 2 * third, third])?;
    expect_row(table, n, [total, 0, 0])
}

type TreeCheck = fn(&MinMaxTree) -> Result<(), String>;
type ActionCheck = fn(&MinMaxTree, &Psi<'_>) -> Result<(), String>;

const TREE_CHECKS: &[(&str, TreeCheck)] = &[
    ("adjacent-ancestry", adjacent_ancestry),
    ("no-adjacent-leaves", no_adjacent_leaves),
    ("last-position-leaf", last_position_leaf),
    ("spans-laminar", spans_laminar),
    ("root-rule", root_rule),
    ("local-extremum", local_extremum_well_defined),
    ("complement-isomorphism", complement_isomorphism),
    ("builder-agreement", builder_agreement),
    ("builder-agreement-min12", builder_agreement_min12),
];

const ACTION_CHECKS: &[(&str, usize, ActionCheck)] = &[
    ("psi-involution", ACTION_MAX_N, involution),
    ("psi-fixed-iff-leaf", ACTION_MAX_N, fixed_iff_leaf),
    ("psi-shape-preservation", ACTION_MAX_N, shape_preservation),
    ("psi-span-contents", ACTION_MAX_N, span_contents),
    ("psi-commutation", COMMUTE_MAX_N, commutation),
    ("orbit-size", COMMUTE_MAX_N, orbit_size),
];

fn exhaustive_checks(n: usize, psi: &Psi<'_>) -> Vec<CheckOutcome> {
    let tree_slots = TREE_CHECKS.len();
    let active_actions: Vec<_> = ACTION_CHECKS.iter().filter(|c| n <= c.1).collect();
    let mut failures: Vec<Option<(Permutation, String)>> =
        vec![None; tree_slots + active_actions.len()];

    let mut p = Permutation::identity(n);
    loop {
        let t = build_minmax(&p);
        for (slot, (_, check)) in TREE_CHECKS.iter().enumerate() {
            if failures[slot].is_none() {
                if let Err(e) = check(&t) {
                    failures[slot] = Some((p.clone(), e));
                }
            }
        }
        for (k, (_, _, check)) in active_actions.iter().enumerate() {
            let slot = tree_slots + k;
            if failures[slot].is_none() {
                if let Err(e) = check(&t, psi) {
                    failures[slot] = Some((p.clone(), e));
                }
            }
        }
        if !p.advance() {
            break;
        }
    }

    let names = TREE_CHECKS
        .iter()
        .map(|c| c.0)
        .chain(active_actions.iter().map(|c| c.0));
    names
        .zip(failures)
        .map(|(name, failure)| CheckOutcome {
            name,
            n,
            passed: failure.is_none(),
            counterexample: failure.as_ref().map(|f| f.0.clone()),
            detail: failure.map(|f| f.1),
        })
        .collect()
}

fn adjacent_ancestry(t: &MinMaxTree) -> Result<(), String> {
    match (1..t.len()).find(|&i| !t.is_ancestor(i, i + 1) && !t.is_ancestor(i + 1, i)) {
        Some(i) => Err(format!("positions {i} and {} are unrelated", i + 1)),
        None => Ok(()),
    }
}

fn no_adjacent_leaves(t: &MinMaxTree) -> Result<(), String> {
    match (1..t.len()).find(|&i| t.is_leaf(i) && t.is_leaf(i + 1)) {
        Some(i) => Err(format!("positions {i} and {} are both leaves", i + 1)),
        None => Ok(()),
    }
}

fn last_position_leaf(t: &MinMaxTree) -> Result<(), String> {
    let n = t.len();
    if !t.is_leaf(n) {
        return Err(format!("position {n} is internal"));
    }
    if n > 1 && t.parent(n) != Some(n - 1) {
        return Err(format!("parent of {n} is {:?}", t.parent(n)));
    }
    Ok(())
}

fn spans_laminar(t: &MinMaxTree) -> Result<(), String> {
    let n = t.len();
    if t.span(t.root()) != (1, n) || t.parent(t.root()).is_some() || t.depth(t.root()) != 0 {
        return Err("root does not cover 1..=n".into());
    }
    for i in 1..=n {
        let (lo, hi) = t.span(i);
        if !(lo <= i && i <= hi) {
            return Err(format!("span of {i} is {lo}..={hi}"));
        }
        let expect_left = (lo < i).then_some((lo, i - 1));
        let expect_right = (i < hi).then_some((i + 1, hi));
        for (child, want) in [(t.left(i), expect_left), (t.right(i), expect_right)] {
            match (child, want) {
                (None, None) => {}
                (Some(c), Some(w)) => {
                    if t.span(c) != w || t.parent(c) != Some(i) || t.depth(c) != t.depth(i) + 1 {
                        return Err(format!("child {c} of {i} is misplaced"));
                    }
                }
                _ => return Err(format!("children of {i} do not partition its span")),
            }
        }
    }
    Ok(())
}

fn root_rule(t: &MinMaxTree) -> Result<(), String> {
    let p = t.permutation();
    for i in 1..=t.len() {
        let (lo, hi) = t.span(i);
        let entries = &p.entries()[lo - 1..hi];
        let min = *entries.iter().min().expect("nonempty");
        let max = *entries.iter().max().expect("nonempty");
        let first = entries
            .iter()
            .position(|&v| v == min || v == max)
            .expect("present")
            + lo;
        if first != i {
            return Err(format!(
                "root of {lo}..={hi} should be {first}, tree has {i}"
            ));
        }
        let want = if lo == hi {
            NodeKind::Leaf
        } else if p.at(i) == min {
            NodeKind::MinRoot
        } else {
            NodeKind::MaxRoot
        };
        if t.kind(i) != want {
            return Err(format!("kind at {i} is {:?}, expected {want:?}", t.kind(i)));
        }
    }
    Ok(())
}

fn local_extremum_well_defined(t: &MinMaxTree) -> Result<(), String> {
    let n = t.len();
    if n < 3 {
        return Ok(());
    }
    for i in 1..=n - 2 {
        let e = t.local_extremum(i).map_err(|e| e.to_string())?;
        for k in i..=i + 2 {
            if k != e && (t.depth(k) <= t.depth(e) || !t.is_ancestor(e, k)) {
                return Err(format!("e_{i} = {e} is not a strict ancestor of {k}"));
            }
        }
    }
    Ok(())
}

fn complement_isomorphism(t: &MinMaxTree) -> Result<(), String> {
    let c = build_minmax(&t.permutation().complement());
    if c.shape_signature() != t.shape_signature() {
        return Err("complement changes the shape".into());
    }
    match (1..=t.len()).find(|&i| c.kind(i) != t.kind(i).mirrored()) {
        Some(i) => Err(format!("kind at {i} does not mirror under complement")),
        None => Ok(()),
    }
}

fn builder_agreement(t: &MinMaxTree) -> Result<(), String> {
    let fast = TreeBuilder::new(Variant::MinMax).build(t.permutation());
    if &fast == t {
        Ok(())
    } else {
        Err("fast minmax builder disagrees".into())
    }
}

fn builder_agreement_min12(t: &MinMaxTree) -> Result<(), String> {
    let p = t.permutation();
    if TreeBuilder::new(Variant::Min1Min2).build(p) == build_min12(p) {
        Ok(())
    } else {
        Err("fast min12 builder disagrees".into())
    }
}

fn involution(t: &MinMaxTree, psi: &Psi<'_>) -> Result<(), String> {
    let p = t.permutation();
    for i in 1..=t.len() {
        let back = psi(&psi(p, i), i);
        if &back != p {
            return Err(format!("i={i}: psi twice gives {back}"));
        }
    }
    Ok(())
}

fn fixed_iff_leaf(t: &MinMaxTree, psi: &Psi<'_>) -> Result<(), String> {
    let p = t.permutation();
    match (1..=t.len()).find(|&i| (psi(p, i) == *p) != t.is_leaf(i)) {
        Some(i) => Err(format!(
            "i={i}: fixed point status differs from leaf status"
        )),
        None => Ok(()),
    }
}

fn shape_preservation(t: &MinMaxTree, psi: &Psi<'_>) -> Result<(), String> {
    let p = t.permutation();
    for i in 1..=t.len() {
        let q = build_minmax(&psi(p, i));
        if q.shape_signature() != t.shape_signature() {
            return Err(format!("i={i}: shape changed"));
        }
        for k in 1..=t.len() {
            let want = if k == i {
                t.kind(k).mirrored()
            } else {
                t.kind(k)
            };
            if q.kind(k) != want {
                return Err(format!(
                    "i={i}: kind at {k} is {:?}, expected {want:?}",
                    q.kind(k)
                ));
            }
        }
    }
    Ok(())
}

fn span_contents(t: &MinMaxTree, psi: &Psi<'_>) -> Result<(), String> {
    let p = t.permutation();
    let sorted = |q: &Permutation, lo: usize, hi: usize| {
        let mut v = q.entries()[lo - 1..hi].to_vec();
        v.sort_unstable();
        v
    };
    for i in 1..=t.len() {
        let q = psi(p, i);
        let (lo, hi) = t.span(i);
        if (1..=t.len()).any(|k| (k < lo || k > hi) && q.at(k) != p.at(k)) {
            return Err(format!("i={i}: entries outside {lo}..={hi} moved"));
        }
        // spans nested strictly inside span(i) are rewritten by design
        for k in 1..=t.len() {
            let (a, b) = t.span(k);
            let nested = lo <= a && b <= hi && k != i;
            if !nested && sorted(p, a, b) != sorted(&q, a, b) {
                return Err(format!("i={i}: contents of span {a}..={b} changed"));
            }
        }
    }
    Ok(())
}

fn commutation(t: &MinMaxTree, psi: &Psi<'_>) -> Result<(), String> {
    let p = t.permutation();
    let n = t.len();
    for i in 1..=n {
        for j in i + 1..=n {
            if psi(&psi(p, i), j) != psi(&psi(p, j), i) {
                return Err(format!("psi_{i} and psi_{j} do not commute"));
            }
        }
    }
    Ok(())
}

fn orbit_size(t: &MinMaxTree, _psi: &Psi<'_>) -> Result<(), String> {
    let internal = t.len() - t.leaf_positions().len();
    let size = orbit(t.permutation(), &GeneratorSet::all(t.len()))
        .map_err(|e| e.to_string())?
        .size();
    if size == 1 << internal {
        Ok(())
    } else {
        Err(format!("orbit has {size} members, expected 2^{internal}"))
    }
}

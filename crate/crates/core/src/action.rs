//! The involutions `psi_i` on permutations, their compositions, and orbits.
//!
//! `psi_i` rewrites only the subtree rooted at position `i`. A minimum node
//! receives the largest entry of its subtree (a maximum node the smallest),
//! and the displaced entries are redistributed so that every child subtree
//! keeps its pattern. The tree shape is unchanged and only the kind of `i`
//! flips. Leaves are fixed.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::perm::{ranks_into, Permutation};
use crate::tree::{build_minmax, MinMaxTree, NodeKind};

/// Orbits under more generators than this are refused; closure size is
/// bounded by `2^generators`.
pub const MAX_ORBIT_GENERATORS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("position {pos} out of range for n = {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("orbit under {generators} generators exceeds the limit of {MAX_ORBIT_GENERATORS}")]
    OrbitTooLarge { generators: usize },
}

/// A set of generator indices, iterated in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorSet(BTreeSet<usize>);

impl GeneratorSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        Self(indices.into_iter().collect())
    }

    /// Every position `1..=n`.
    pub fn all(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    fn check(&self, n: usize) -> Result<(), ActionError> {
        match self.0.iter().find(|&&i| i == 0 || i > n) {
            Some(&pos) => Err(ActionError::PositionOutOfRange { pos, n }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::new(iter)
    }
}

/// Applies `psi_i` to `p`, whose minmax tree is `t`.
///
/// The root of a span is the leftmost of its two extremes, so the opposite
/// extreme always sits in the right subtree and the left subtree holds
/// neither. The left subtree is kept as is; the root takes the opposite
/// extreme and the right subtree is relabelled order-isomorphically onto
/// its old values with that extreme swapped for the old root value.
pub(crate) fn psi_on_tree(t: &MinMaxTree, i: usize) -> Permutation {
    let p = t.permutation();
    let kind = t.kind(i);
    if kind == NodeKind::Leaf {
        return p.clone();
    }
    let (lo, hi) = t.span(i);
    let mut entries = p.entries().to_vec();
    let old_root = entries[i - 1];
    let right = &mut entries[i..hi];

    let mut values: Vec<usize> = right.to_vec();
    values.sort_unstable();
    let new_root = match kind {
        NodeKind::MinRoot => values.pop().expect("right subtree holds the max"),
        _ => values.remove(0),
    };
    let (floor, ceil) = (old_root.min(new_root), old_root.max(new_root));
    debug_assert!(
        p.entries()[lo - 1..i - 1]
            .iter()
            .all(|&v| floor < v && v < ceil),
        "left subtree of {i} holds an extreme"
    );
    let insert_at = values.partition_point(|&v| v < old_root);
    values.insert(insert_at, old_root);

    let mut ranks = Vec::with_capacity(right.len());
    ranks_into(right, &mut ranks);
    for (slot, &r) in right.iter_mut().zip(&ranks) {
        *slot = values[r];
    }
    entries[i - 1] = new_root;
    Permutation::from_vec_unchecked(entries)
}

/// `psi_i(p)` for `1 <= i <= n`.
pub fn psi(p: &Permutation, i: usize) -> Result<Permutation, ActionError> {
    let n = p.len();
    if i == 0 || i > n {
        return Err(ActionError::PositionOutOfRange { pos: i, n });
    }
    let t = build_minmax(p);
    let out = psi_on_tree(&t, i);
    debug_assert_eq!(
        build_minmax(&out).shape_signature(),
        t.shape_signature(),
        "psi_{i} changed the tree shape of {p}"
    );
    Ok(out)
}

/// Composes `psi_i` over `gens` in ascending index order.
pub fn psi_set(p: &Permutation, gens: &GeneratorSet) -> Result<Permutation, ActionError> {
    gens.check(p.len())?;
    let mut q = p.clone();
    for i in gens.iter() {
        q = psi(&q, i)?;
    }
    Ok(q)
}

/// Positions fixed by their own `psi`: exactly the leaves of the minmax tree.
pub fn fixed_positions(p: &Permutation) -> Vec<usize> {
    let t = build_minmax(p);
    let leaves = t.leaf_positions();
    debug_assert_eq!(
        leaves,
        (1..=p.len())
            .filter(|&i| psi_on_tree(&t, i) == *p)
            .collect::<Vec<_>>()
    );
    leaves
}

/// Closure of a permutation under a set of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    base: Permutation,
    generators: GeneratorSet,
    members: Vec<Permutation>,
}

impl OrbitRecord {
    pub fn base(&self) -> &Permutation {
        &self.base
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Generators that fix the base, i.e. sit on leaves. Since `psi` keeps
    /// the tree shape, they fix every member.
    pub fn trivial_generators(&self) -> Vec<usize> {
        let t = build_minmax(&self.base);
        self.generators.iter().filter(|&i| t.is_leaf(i)).collect()
    }

    pub fn effective_generators(&self) -> Vec<usize> {
        let t = build_minmax(&self.base);
        self.generators.iter().filter(|&i| !t.is_leaf(i)).collect()
    }
}

/// Breadth-first closure of `{p}` under `psi_i` for `i` in `gens`.
pub fn orbit(p: &Permutation, gens: &GeneratorSet) -> Result<OrbitRecord, ActionError> {
    gens.check(p.len())?;
    if gens.len() > MAX_ORBIT_GENERATORS {
        return Err(ActionError::OrbitTooLarge {
            generators: gens.len(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        let t = build_minmax(&q);
        for i in gens.iter() {
            let next = psi_on_tree(&t, i);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(OrbitRecord {
        base: p.clone(),
        generators: gens.clone(),
        members: seen.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn perm(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    #[test]
    fn psi_figure2() {
        let p = perm("3 6 7 1 5 2 10 4 9 8");
        assert_eq!(psi(&p, 7).unwrap(), perm("3 6 7 1 5 2 4 8 10 9"));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&perm("1 2 3"), 1).unwrap(), perm("3 1 2"));
        // left subtree {2} stays put; 3 moves up, 1 takes its place
        assert_eq!(psi(&perm("2 1 3"), 2).unwrap(), perm("2 3 1"));
        assert_eq!(psi(&perm("2 3 1"), 2).unwrap(), perm("2 1 3"));
        let p = perm("3 6 7 1 5 2 10 4 9 8");
        assert_eq!(psi(&p, 10).unwrap(), p);
        assert_eq!(
            psi(&p, 11),
            Err(ActionError::PositionOutOfRange { pos: 11, n: 10 })
        );
        assert!(psi(&p, 0).is_err());
    }

    #[test]
    fn psi_set_examples() {
        let p = perm("1 3 2");
        assert_eq!(psi_set(&p, &GeneratorSet::default()).unwrap(), p);
        assert_eq!(psi(&p, 1).unwrap(), perm("3 2 1"));
        assert_eq!(
            psi_set(&p, &GeneratorSet::new([1, 2])).unwrap(),
            perm("3 1 2")
        );
        assert_eq!(
            psi_set(&p, &GeneratorSet::new([2])).unwrap(),
            psi(&p, 2).unwrap()
        );
        assert!(psi_set(&p, &GeneratorSet::new([4])).is_err());
    }

    #[test]
    fn fixed_examples() {
        assert_eq!(
            fixed_positions(&perm("3 6 7 1 5 2 10 4 9 8")),
            vec![3, 5, 10]
        );
        assert_eq!(fixed_positions(&perm("1")), vec![1]);
        assert_eq!(fixed_positions(&perm("1 2")), vec![2]);
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&perm("2 1 3"), &GeneratorSet::all(3)).unwrap();
        assert_eq!(o.members(), &[perm("2 1 3"), perm("2 3 1")]);
        assert_eq!(o.trivial_generators(), vec![1, 3]);
        assert_eq!(o.effective_generators(), vec![2]);

        let p = perm("4 2 3 1");
        let o = orbit(&p, &GeneratorSet::default()).unwrap();
        assert_eq!(o.members(), std::slice::from_ref(&p));
        assert!(o.contains(&p));

        let o = orbit(&perm("3 6 7 1 5 2 10 4 9 8"), &GeneratorSet::all(10)).unwrap();
        assert_eq!(o.size(), 128);
    }

    #[test]
    fn orbit_guard() {
        let p = Permutation::identity(30);
        assert_eq!(
            orbit(&p, &GeneratorSet::all(26)),
            Err(ActionError::OrbitTooLarge { generators: 26 })
        );
    }
}

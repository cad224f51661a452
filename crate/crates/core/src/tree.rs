//! Minmax trees and the min1-min2 variant.
//!
//! The tree of a permutation `p = u m v` puts `m`, the leftmost of the
//! minimum and maximum entries, at the root and recurses on `u` (left) and
//! `v` (right). Every subtree therefore covers a contiguous interval of
//! positions, so nodes are identified by their 1-based position and the
//! tree is stored as flat arrays indexed by position.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::sparse::RangeExtrema;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("position {pos} out of range for n = {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("operation requires a minmax tree, got {0}")]
    WrongVariant(Variant),
}

/// Which pair of entries competes for each subtree root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Leftmost of the minimum and the maximum.
    MinMax,
    /// Leftmost of the minimum and the second minimum.
    Min1Min2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::MinMax => "minmax",
            Variant::Min1Min2 => "min12",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classification of a node.
///
/// For [`Variant::Min1Min2`] trees `MaxRoot` means the root entry is the
/// second minimum of its subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    MinRoot,
    MaxRoot,
}

impl NodeKind {
    /// The kind under complementation.
    pub fn mirrored(self) -> Self {
        match self {
            NodeKind::Leaf => NodeKind::Leaf,
            NodeKind::MinRoot => NodeKind::MaxRoot,
            NodeKind::MaxRoot => NodeKind::MinRoot,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NodeKind::Leaf => "Leaf",
            NodeKind::MinRoot => "Min",
            NodeKind::MaxRoot => "Max",
        }
    }
}

/// Shape of a tree with entries erased: the left and right child of every
/// position, in position order (`0` for an absent child).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeSignature(Vec<u32>);

impl ShapeSignature {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for ShapeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, pair) in self.0.chunks(2).enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}/{}", pair[0], pair[1])?;
        }
        Ok(())
    }
}

/// A tree on positions `1..=n` of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxTree {
    variant: Variant,
    perm: Permutation,
    root: usize,
    // 0-based storage, 1-based values; 0 means "none"
    parent: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    span: Vec<(usize, usize)>,
    depth: Vec<usize>,
    kind: Vec<NodeKind>,
}

fn opt(pos: usize) -> Option<usize> {
    (pos != 0).then_some(pos)
}

impl MinMaxTree {
    fn empty(variant: Variant) -> Self {
        Self {
            variant,
            perm: Permutation::identity(1),
            root: 0,
            parent: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            span: Vec::new(),
            depth: Vec::new(),
            kind: Vec::new(),
        }
    }

    fn reset(&mut self, p: &Permutation) {
        let n = p.len();
        self.perm.clone_from(p);
        self.root = 0;
        for v in [&mut self.parent, &mut self.left, &mut self.right] {
            v.clear();
            v.resize(n, 0);
        }
        self.span.clear();
        self.span.resize(n, (0, 0));
        self.depth.clear();
        self.depth.resize(n, 0);
        self.kind.clear();
        self.kind.resize(n, NodeKind::Leaf);
    }

    /// Records the root of the 0-based interval `lo..=hi`.
    fn place(
        &mut self,
        root: usize,
        lo: usize,
        hi: usize,
        parent: usize,
        depth: usize,
        kind: NodeKind,
    ) {
        let r = root + 1;
        self.span[root] = (lo + 1, hi + 1);
        self.depth[root] = depth;
        self.kind[root] = kind;
        self.parent[root] = parent;
        if parent == 0 {
            self.root = r;
        } else if r < parent {
            self.left[parent - 1] = r;
        } else {
            self.right[parent - 1] = r;
        }
    }

    fn check(&self, i: usize) -> Result<(), TreeError> {
        if i == 0 || i > self.len() {
            return Err(TreeError::PositionOutOfRange {
                pos: i,
                n: self.len(),
            });
        }
        Ok(())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Entry at position `i`.
    pub fn entry(&self, i: usize) -> usize {
        self.perm.at(i)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    // The per-position accessors below panic on an out-of-range position;
    // the checked forms are `node_kind` and `children_count`.

    pub fn parent(&self, i: usize) -> Option<usize> {
        opt(self.parent[i - 1])
    }

    pub fn left(&self, i: usize) -> Option<usize> {
        opt(self.left[i - 1])
    }

    pub fn right(&self, i: usize) -> Option<usize> {
        opt(self.right[i - 1])
    }

    /// Inclusive position interval covered by the subtree rooted at `i`.
    pub fn span(&self, i: usize) -> (usize, usize) {
        self.span[i - 1]
    }

    /// Distance from the root; the root has depth 0.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i - 1]
    }

    pub fn kind(&self, i: usize) -> NodeKind {
        self.kind[i - 1]
    }

    pub fn node_kind(&self, i: usize) -> Result<NodeKind, TreeError> {
        self.check(i)?;
        Ok(self.kind(i))
    }

    pub fn children_count(&self, i: usize) -> Result<usize, TreeError> {
        self.check(i)?;
        Ok(self.child_count_unchecked(i))
    }

    #[inline]
    pub(crate) fn child_count_unchecked(&self, i: usize) -> usize {
        usize::from(self.left[i - 1] != 0) + usize::from(self.right[i - 1] != 0)
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.child_count_unchecked(i) == 0
    }

    /// Positions without children, ascending.
    pub fn leaf_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.is_leaf(i)).collect()
    }

    /// True if `a` is a proper ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = self.span(a);
        a != b && lo <= b && b <= hi
    }

    /// Among positions `i`, `i+1`, `i+2`, the one closest to the root.
    pub fn local_extremum(&self, i: usize) -> Result<usize, TreeError> {
        let n = self.len();
        if i == 0 || n < 3 || i > n - 2 {
            return Err(TreeError::PositionOutOfRange { pos: i, n });
        }
        Ok((i..=i + 2)
            .min_by_key(|&k| self.depth(k))
            .expect("nonempty range"))
    }

    /// True iff every internal node is a minimum node.
    pub fn is_andre(&self) -> Result<bool, TreeError> {
        if self.variant != Variant::MinMax {
            return Err(TreeError::WrongVariant(self.variant));
        }
        Ok(self.kind.iter().all(|&k| k != NodeKind::MaxRoot))
    }

    pub fn shape_signature(&self) -> ShapeSignature {
        ShapeSignature(
            self.left
                .iter()
                .zip(&self.right)
                .flat_map(|(&l, &r)| [l as u32, r as u32])
                .collect(),
        )
    }

    /// Positions in pre-order (root, left subtree, right subtree).
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            out.push(i);
            if let Some(r) = self.right(i) {
                stack.push(r);
            }
            if let Some(l) = self.left(i) {
                stack.push(l);
            }
        }
        out
    }
}

/// Picks the root candidate pair `(a, b)` of a 0-based interval by linear
/// scan: `a` is always the minimum, `b` the maximum or second minimum.
fn scan_candidates(values: &[usize], lo: usize, hi: usize, variant: Variant) -> (usize, usize) {
    let (mut a, mut b) = match variant {
        Variant::MinMax => (lo, lo),
        Variant::Min1Min2 if values[lo] < values[lo + 1] => (lo, lo + 1),
        Variant::Min1Min2 => (lo + 1, lo),
    };
    let start = match variant {
        Variant::MinMax => lo + 1,
        Variant::Min1Min2 => lo + 2,
    };
    for k in start..=hi {
        let v = values[k];
        match variant {
            Variant::MinMax => {
                if v < values[a] {
                    a = k;
                }
                if v > values[b] {
                    b = k;
                }
            }
            Variant::Min1Min2 => {
                if v < values[a] {
                    b = a;
                    a = k;
                } else if v < values[b] {
                    b = k;
                }
            }
        }
    }
    (a, b)
}

fn build_reference(p: &Permutation, variant: Variant) -> MinMaxTree {
    fn go(t: &mut MinMaxTree, values: &[usize], lo: usize, hi: usize, parent: usize, depth: usize) {
        if lo == hi {
            t.place(lo, lo, hi, parent, depth, NodeKind::Leaf);
            return;
        }
        let (a, b) = scan_candidates(values, lo, hi, t.variant);
        let root = a.min(b);
        let kind = if root == a {
            NodeKind::MinRoot
        } else {
            NodeKind::MaxRoot
        };
        t.place(root, lo, hi, parent, depth, kind);
        if root > lo {
            go(t, values, lo, root - 1, root + 1, depth + 1);
        }
        if root < hi {
            go(t, values, root + 1, hi, root + 1, depth + 1);
        }
    }

    let mut t = MinMaxTree::empty(variant);
    t.reset(p);
    go(&mut t, p.entries(), 0, p.len() - 1, 0, 0);
    t
}

/// Minmax tree by direct recursion with linear scans. Quadratic in the
/// worst case; kept as the oracle for [`build_minmax_fast`].
pub fn build_minmax(p: &Permutation) -> MinMaxTree {
    build_reference(p, Variant::MinMax)
}

/// Min1-min2 tree by direct recursion.
pub fn build_min12(p: &Permutation) -> MinMaxTree {
    build_reference(p, Variant::Min1Min2)
}

/// Builds either variant, reference algorithm.
pub fn build_tree(p: &Permutation, variant: Variant) -> MinMaxTree {
    build_reference(p, variant)
}

/// Minmax tree via range-extremum sparse tables.
pub fn build_minmax_fast(p: &Permutation) -> MinMaxTree {
    TreeBuilder::new(Variant::MinMax).build(p)
}

/// Reusable fast builder. Holds the sparse tables and work stack so repeated
/// builds (the census does billions) allocate nothing once warmed up.
#[derive(Debug, Clone)]
pub struct TreeBuilder {
    variant: Variant,
    table: RangeExtrema,
    stack: Vec<Frame>,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    lo: usize,
    hi: usize,
    parent: usize,
    depth: usize,
}

impl TreeBuilder {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            table: RangeExtrema::new(variant),
            stack: Vec::new(),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn build(&mut self, p: &Permutation) -> MinMaxTree {
        let mut t = MinMaxTree::empty(self.variant);
        self.build_into(p, &mut t);
        t
    }

    /// Overwrites `out` with the tree of `p`.
    pub fn build_into(&mut self, p: &Permutation, out: &mut MinMaxTree) {
        out.variant = self.variant;
        out.reset(p);
        let values = p.entries();
        self.table.rebuild(values);
        self.stack.clear();
        self.stack.push(Frame {
            lo: 0,
            hi: values.len() - 1,
            parent: 0,
            depth: 0,
        });
        while let Some(Frame {
            lo,
            hi,
            parent,
            depth,
        }) = self.stack.pop()
        {
            if lo == hi {
                out.place(lo, lo, hi, parent, depth, NodeKind::Leaf);
                continue;
            }
            let (a, b) = self.table.query(values, lo, hi);
            let root = a.min(b);
            let kind = if root == a {
                NodeKind::MinRoot
            } else {
                NodeKind::MaxRoot
            };
            out.place(root, lo, hi, parent, depth, kind);
            if root < hi {
                self.stack.push(Frame {
                    lo: root + 1,
                    hi,
                    parent: root + 1,
                    depth: depth + 1,
                });
            }
            if root > lo {
                self.stack.push(Frame {
                    lo,
                    hi: root - 1,
                    parent: root + 1,
                    depth: depth + 1,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn figure1() -> MinMaxTree {
        build_minmax(&parse_permutation("3 6 7 1 5 2 10 4 9 8").unwrap())
    }

    fn tree(s: &str) -> MinMaxTree {
        build_minmax(&parse_permutation(s).unwrap())
    }

    #[test]
    fn figure1_structure() {
        let t = figure1();
        assert_eq!(t.root(), 4);
        assert_eq!(t.entry(4), 1);
        assert_eq!(t.left(4), Some(1));
        assert_eq!(t.right(1), Some(2));
        assert_eq!(t.right(2), Some(3));
        assert_eq!(t.left(1), None);
        assert_eq!(t.right(4), Some(6));
        assert_eq!(t.left(6), Some(5));
        assert_eq!(t.right(6), Some(7));
        assert_eq!(t.right(7), Some(8));
        assert_eq!(t.right(8), Some(9));
        assert_eq!(t.right(9), Some(10));
        assert_eq!(t.span(6), (5, 10));
        assert_eq!(t.leaf_positions(), vec![3, 5, 10]);
    }

    #[test]
    fn node_kinds() {
        let t = figure1();
        assert_eq!(t.node_kind(7), Ok(NodeKind::MaxRoot));
        assert_eq!(t.node_kind(3), Ok(NodeKind::Leaf));
        assert_eq!(t.node_kind(4), Ok(NodeKind::MinRoot));
        assert_eq!(t.node_kind(9), Ok(NodeKind::MaxRoot));
        assert_eq!(
            t.node_kind(11),
            Err(TreeError::PositionOutOfRange { pos: 11, n: 10 })
        );
        assert!(t.node_kind(0).is_err());
    }

    #[test]
    fn children_counts() {
        let t = figure1();
        assert_eq!(t.children_count(6), Ok(2));
        assert_eq!(t.children_count(7), Ok(1));
        assert_eq!(t.children_count(10), Ok(0));
        assert!(t.children_count(11).is_err());
    }

    #[test]
    fn small_trees() {
        let t = tree("1");
        assert_eq!(t.root(), 1);
        assert_eq!(t.kind(1), NodeKind::Leaf);
        assert_eq!(t.leaf_positions(), vec![1]);

        let t = tree("2 1 3");
        assert_eq!(t.root(), 2);
        assert_eq!(t.left(2), Some(1));
        assert_eq!(t.right(2), Some(3));

        assert_eq!(tree("1 2").leaf_positions(), vec![2]);
    }

    #[test]
    fn local_extremum_examples() {
        let t = figure1();
        assert_eq!(t.local_extremum(4), Ok(4));
        assert_eq!(t.local_extremum(1), Ok(1));
        assert_eq!(t.local_extremum(8), Ok(8));
        assert!(t.local_extremum(9).is_err());
        assert!(t.local_extremum(0).is_err());
        assert!(tree("1 2").local_extremum(1).is_err());
    }

    #[test]
    fn andre_examples() {
        assert_eq!(tree("1 2 3").is_andre(), Ok(true));
        assert_eq!(tree("2 1").is_andre(), Ok(false));
        assert_eq!(figure1().is_andre(), Ok(false));
        let t = build_min12(&parse_permutation("1 2").unwrap());
        assert_eq!(
            t.is_andre(),
            Err(TreeError::WrongVariant(Variant::Min1Min2))
        );
    }

    #[test]
    fn min12_examples() {
        let t = build_min12(&parse_permutation("2 1 3").unwrap());
        assert_eq!(t.variant(), Variant::Min1Min2);
        assert_eq!(t.root(), 1);
        assert_eq!(t.kind(1), NodeKind::MaxRoot);
        assert_eq!(t.right(1), Some(2));
        assert_eq!(t.span(2), (2, 3));
        assert_eq!(t.right(2), Some(3));
        assert_eq!(t.kind(2), NodeKind::MinRoot);

        let t = build_min12(&parse_permutation("1").unwrap());
        assert_eq!(t.kind(1), NodeKind::Leaf);

        let t = build_min12(&parse_permutation("1 2").unwrap());
        assert_eq!(t.root(), 1);
        assert_eq!(t.right(1), Some(2));
    }

    #[test]
    fn shape_signatures() {
        let p = parse_permutation("3 6 7 1 5 2 10 4 9 8").unwrap();
        assert_eq!(
            build_minmax(&p).shape_signature(),
            build_minmax(&p.complement()).shape_signature()
        );
        assert_eq!(tree("1").shape_signature(), tree("1").shape_signature());
        assert_ne!(
            tree("1 2 3").shape_signature(),
            tree("2 1 3").shape_signature()
        );
    }

    #[test]
    fn builder_is_reusable_across_sizes() {
        let mut b = TreeBuilder::new(Variant::MinMax);
        let mut t = b.build(&parse_permutation("3 6 7 1 5 2 10 4 9 8").unwrap());
        assert_eq!(t, figure1());
        b.build_into(&parse_permutation("2 1 3").unwrap(), &mut t);
        assert_eq!(t, tree("2 1 3"));
    }

    #[test]
    fn preorder_is_root_first() {
        assert_eq!(figure1().preorder(), vec![4, 1, 2, 3, 6, 5, 7, 8, 9, 10]);
    }
}

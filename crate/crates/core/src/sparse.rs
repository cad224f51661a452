//! Sparse tables answering "which two positions are the root candidates of
//! this interval" in constant time.
//!
//! Every cell holds a pair of positions. For [`Variant::MinMax`] it is
//! `(argmin, argmax)`; for [`Variant::Min1Min2`] it is `(argmin, arg
//! second-min)`. Cells of length one hold `(i, i)`.

use crate::tree::Variant;

#[derive(Debug, Clone)]
pub(crate) struct RangeExtrema {
    variant: Variant,
    len: usize,
    // level k occupies cells[offsets[k]..offsets[k] + len + 1 - 2^k]
    offsets: Vec<usize>,
    cells: Vec<(u32, u32)>,
}

impl RangeExtrema {
    pub(crate) fn new(variant: Variant) -> Self {
        Self {
            variant,
            len: 0,
            offsets: Vec::new(),
            cells: Vec::new(),
        }
    }

    /// Rebuilds the tables for `values`, reusing the existing allocation.
    pub(crate) fn rebuild(&mut self, values: &[usize]) {
        let n = values.len();
        self.len = n;
        self.offsets.clear();
        self.cells.clear();
        if n == 0 {
            return;
        }
        self.offsets.push(0);
        self.cells.extend((0..n as u32).map(|i| (i, i)));
        let mut width = 1;
        while 2 * width <= n {
            let prev = *self.offsets.last().unwrap();
            let count = n + 1 - 2 * width;
            self.offsets.push(self.cells.len());
            for i in 0..count {
                let a = self.cells[prev + i];
                let b = self.cells[prev + i + width];
                let merged = self.merge(values, a, b);
                self.cells.push(merged);
            }
            width *= 2;
        }
    }

    /// Root candidates of the inclusive 0-based interval `lo..=hi`.
    #[inline]
    pub(crate) fn query(&self, values: &[usize], lo: usize, hi: usize) -> (usize, usize) {
        debug_assert!(lo <= hi && hi < self.len);
        let len = hi - lo + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let base = self.offsets[k];
        let a = self.cells[base + lo];
        let b = self.cells[base + hi + 1 - (1 << k)];
        let (x, y) = self.merge(values, a, b);
        (x as usize, y as usize)
    }

    #[inline]
    fn merge(&self, values: &[usize], a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
        let v = |i: u32| values[i as usize];
        match self.variant {
            Variant::MinMax => {
                let lo = if v(a.0) <= v(b.0) { a.0 } else { b.0 };
                let hi = if v(a.1) >= v(b.1) { a.1 } else { b.1 };
                (lo, hi)
            }
            Variant::Min1Min2 => {
                // two smallest distinct positions among the four candidates;
                // windows may overlap so the same position can appear twice
                let mut first = a.0;
                let mut second = u32::MAX;
                for c in [a.1, b.0, b.1] {
                    if c == first || c == second {
                        continue;
                    }
                    if v(c) < v(first) {
                        second = first;
                        first = c;
                    } else if second == u32::MAX || v(c) < v(second) {
                        second = c;
                    }
                }
                if second == u32::MAX {
                    second = first;
                }
                (first, second)
            }
        }
    }
}

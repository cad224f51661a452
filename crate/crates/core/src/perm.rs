//! Permutations of `1..=n`, words of distinct integers, and the pattern
//! machinery that relates them.
//!
//! Positions and values are 1-based at the interface. Lexicographic order is
//! the canonical enumeration order: [`rank`], [`unrank`] and [`successor`]
//! all agree on it, which is what the census relies on to split `S_n` into
//! contiguous rank intervals.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest `n` for which `n!` fits the 64-bit counters used by ranking and
/// by the census.
pub const MAX_RANKED_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("no entries given")]
    Empty,
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("word contains duplicate values")]
    DuplicateValues,
    #[error("size mismatch: word has {word} entries but {values} values were given")]
    SizeMismatch { word: usize, values: usize },
    #[error("index {index} out of range for n = {n} (n! = {total})")]
    IndexOutOfRange { n: usize, index: u64, total: u64 },
    #[error("n = {0} exceeds the 64-bit counter limit of {MAX_RANKED_N}")]
    NTooLarge(usize),
}

/// A permutation of `1..=n` in one-line notation, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Checks that `entries` is a bijection on `1..=entries.len()`.
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::Empty);
        }
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(PermError::NotAPermutation(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::NotAPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self(entries))
    }

    /// Caller guarantees the bijection invariant.
    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self(entries)
    }

    /// Steps to the lexicographic successor in place; false at the last one.
    pub(crate) fn advance(&mut self) -> bool {
        advance_lex(&mut self.0)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have at least one entry");
        Self((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; a permutation has at least one entry.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `p_i` at 1-based position `i`.
    ///
    /// Panics if `i` is not in `1..=n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    /// The permutation with entries `n + 1 - p_i`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Self(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.iter().map(|&v| v as i64).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

/// Parses a one-line permutation; tokens may be separated by whitespace,
/// commas, or both.
pub fn parse_permutation(text: &str) -> Result<Permutation, PermError> {
    let mut entries = Vec::new();
    for token in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let v: usize = token
            .parse()
            .map_err(|_| PermError::NotAPermutation(format!("bad token {token:?}")))?;
        entries.push(v);
    }
    Permutation::new(entries)
}

/// A finite sequence of pairwise distinct integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<i64>);

impl Word {
    pub fn new(values: Vec<i64>) -> Result<Self, PermError> {
        if has_duplicates(&values) {
            return Err(PermError::DuplicateValues);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&Permutation> for Word {
    fn from(p: &Permutation) -> Self {
        p.as_word()
    }
}

fn has_duplicates<T: Ord + Copy>(values: &[T]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Writes, for each slot of `word`, the 0-based rank of its value among all
/// values of `word`. Values must be distinct.
pub(crate) fn ranks_into<T: Ord + Copy>(word: &[T], out: &mut Vec<usize>) {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_unstable_by_key(|&k| word[k]);
    out.clear();
    out.resize(word.len(), 0);
    for (r, &k) in order.iter().enumerate() {
        out[k] = r;
    }
}

/// The unique permutation order-isomorphic to `w`.
pub fn pattern_of(w: &Word) -> Result<Permutation, PermError> {
    if w.is_empty() {
        return Err(PermError::Empty);
    }
    if has_duplicates(&w.0) {
        return Err(PermError::DuplicateValues);
    }
    let mut ranks = Vec::new();
    ranks_into(&w.0, &mut ranks);
    Ok(Permutation(ranks.into_iter().map(|r| r + 1).collect()))
}

/// Rewrites `w` over the value set `values`, keeping every pairwise
/// comparison: the k-th smallest of `values` lands where the k-th smallest
/// entry of `w` was.
pub fn relabel_order_isomorphic(w: &Word, values: &[i64]) -> Result<Word, PermError> {
    if w.len() != values.len() {
        return Err(PermError::SizeMismatch {
            word: w.len(),
            values: values.len(),
        });
    }
    if has_duplicates(&w.0) || has_duplicates(values) {
        return Err(PermError::DuplicateValues);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut ranks = Vec::new();
    ranks_into(&w.0, &mut ranks);
    Ok(Word(ranks.into_iter().map(|r| sorted[r]).collect()))
}

/// Lexicographic index of a permutation within `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexIndex(pub u64);

/// `n!`, or `None` if it overflows `u64`.
pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn ranked_factorial(n: usize) -> Result<u64, PermError> {
    if n > MAX_RANKED_N {
        return Err(PermError::NTooLarge(n));
    }
    Ok(factorial(n).expect("20! fits in u64"))
}

/// The `k`-th permutation of `S_n` in lexicographic order, decoded from the
/// factorial number system.
pub fn unrank(n: usize, k: LexIndex) -> Result<Permutation, PermError> {
    if n == 0 {
        return Err(PermError::Empty);
    }
    let total = ranked_factorial(n)?;
    if k.0 >= total {
        return Err(PermError::IndexOutOfRange {
            n,
            index: k.0,
            total,
        });
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut rest = k.0;
    let mut radix = total;
    let mut entries = Vec::with_capacity(n);
    for remaining in (1..=n as u64).rev() {
        radix /= remaining;
        let digit = (rest / radix) as usize;
        rest %= radix;
        entries.push(pool.remove(digit));
    }
    Ok(Permutation(entries))
}

/// Inverse of [`unrank`].
pub fn rank(p: &Permutation) -> Result<LexIndex, PermError> {
    let n = p.len();
    let total = ranked_factorial(n)?;
    let mut radix = total;
    let mut index = 0u64;
    for (k, &v) in p.0.iter().enumerate() {
        radix /= (n - k) as u64;
        let smaller_later = p.0[k + 1..].iter().filter(|&&w| w < v).count() as u64;
        index += smaller_later * radix;
    }
    Ok(LexIndex(index))
}

/// Next permutation in lexicographic order, or `None` after the last one.
pub fn successor(p: &Permutation) -> Option<Permutation> {
    let mut next = p.clone();
    advance_lex(&mut next.0).then_some(next)
}

/// In-place lexicographic step. Returns false (and leaves `a` untouched) if
/// `a` is already the last arrangement.
pub(crate) fn advance_lex(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Uniform random permutation of `1..=n`. The generator is ChaCha8 keyed by
/// `seed` and positioned on `stream`, so each `(seed, stream)` pair is an
/// independent, replayable source.
pub fn random_permutation(n: usize, seed: u64, stream: u64) -> Permutation {
    assert!(n >= 1, "permutations have at least one entry");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut entries: Vec<usize> = (1..=n).collect();
    entries.shuffle(&mut rng);
    Permutation(entries)
}

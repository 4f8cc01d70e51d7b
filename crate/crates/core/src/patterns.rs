// SPDX-License-Identifier: Apache-2.0

//! Rank, permutation and inversion representations of ordinal patterns.
//!
//! All tuples are one-based and follow the increasing convention: rank 1 is
//! the smallest value of the window and the permutation tuple lists indices
//! from the smallest to the largest value. For a window `x` of length `d`:
//!
//! * rank: `r_j < r_k` iff `x_j < x_k`,
//! * permutation: `x[π_1] < ... < x[π_d]`, the inverse permutation of `r`,
//! * inversion: `i_j = #{k > j : x_j > x_k}`, so `0 <= i_j <= d - j` and
//!   `i_d = 0`. The trailing zero is kept so every tuple has length `d`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{PatternError, Result};
use crate::scalar::Scalar;

/// Largest `d` accepted by [`enumerate_patterns`].
pub const MAX_ENUMERATION_D: usize = 9;

/// A validated window: at least two finite values.
#[derive(Debug, Clone, Copy)]
pub struct Window<'a, T> {
    values: &'a [T],
}

impl<'a, T: Scalar> Window<'a, T> {
    pub fn new(values: &'a [T]) -> Result<Self> {
        if values.len() < 2 {
            return Err(PatternError::Length {
                d: values.len(),
                min: 2,
                max: usize::MAX,
            });
        }
        if let Some(p) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(PatternError::NonFinite { position: p + 1 });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &'a [T] {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First tied pair (one-based positions), if any.
    pub fn first_tie(&self) -> Option<(usize, usize)> {
        let v = self.values;
        for j in 0..v.len() {
            for k in j + 1..v.len() {
                if v[j] == v[k] {
                    return Some((j + 1, k + 1));
                }
            }
        }
        None
    }
}

/// Total order of two finite scalars. Callers validate finiteness first.
#[inline]
pub(crate) fn cmp_values<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn fmt_tuple(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (n, v) in values.iter().enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Checks that `values` is a permutation of `1..=d` with `d >= 2`.
fn check_permutation(values: &[usize], what: &str) -> Result<()> {
    let d = values.len();
    if d < 2 {
        return Err(PatternError::InvalidPattern(format!(
            "{what} needs at least two entries"
        )));
    }
    let mut seen = vec![false; d];
    for &v in values {
        if v == 0 || v > d || seen[v - 1] {
            return Err(PatternError::InvalidPattern(format!(
                "{what} is not a permutation of 1..={d}"
            )));
        }
        seen[v - 1] = true;
    }
    Ok(())
}

/// One-based inverse of a one-based permutation.
pub(crate) fn inverse_permutation(values: &[usize]) -> Vec<usize> {
    let mut out = vec![0; values.len()];
    for (pos, &v) in values.iter().enumerate() {
        out[v - 1] = pos + 1;
    }
    out
}

/// `i_j = #{k > j : r_j > r_k}` on any sequence of distinct keys.
pub(crate) fn inversion_counts<K: Ord>(keys: &[K]) -> Vec<usize> {
    (0..keys.len())
        .map(|j| keys[j + 1..].iter().filter(|k| keys[j] > **k).count())
        .collect()
}

/// Rank representation: a permutation of `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankPattern {
    ranks: Vec<usize>,
}

impl RankPattern {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        check_permutation(&ranks, "rank tuple")?;
        Ok(Self { ranks })
    }

    pub(crate) fn from_vec_unchecked(ranks: Vec<usize>) -> Self {
        debug_assert!(check_permutation(&ranks, "rank tuple").is_ok());
        Self { ranks }
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::new((1..=d).collect())
    }

    pub fn d(&self) -> usize {
        self.ranks.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ranks
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.ranks
    }

    /// Position `j` of the result holds the index whose rank is `j`.
    pub fn to_permutation(&self) -> PermutationPattern {
        PermutationPattern {
            indices: inverse_permutation(&self.ranks),
        }
    }

    /// Right inversion counts of the ranks.
    pub fn to_inversion(&self) -> InversionPattern {
        InversionPattern {
            counts: inversion_counts(&self.ranks),
        }
    }
}

impl fmt::Display for RankPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.ranks)
    }
}

/// Permutation representation: indices sorted from the smallest to the
/// largest value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationPattern {
    indices: Vec<usize>,
}

impl PermutationPattern {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        check_permutation(&indices, "permutation tuple")?;
        Ok(Self { indices })
    }

    pub(crate) fn from_vec_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(check_permutation(&indices, "permutation tuple").is_ok());
        Self { indices }
    }

    pub fn d(&self) -> usize {
        self.indices.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.indices
    }

    pub fn to_rank(&self) -> RankPattern {
        RankPattern {
            ranks: inverse_permutation(&self.indices),
        }
    }

    pub fn to_inversion(&self) -> InversionPattern {
        self.to_rank().to_inversion()
    }
}

impl fmt::Display for PermutationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.indices)
    }
}

/// Inversion representation: right inversion counts `(i_1, ..., i_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionPattern {
    counts: Vec<usize>,
}

impl InversionPattern {
    /// Accepts counts with `i_j <= d - j` (one-based `j`), which forces `i_d = 0`.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let d = counts.len();
        if d < 2 {
            return Err(PatternError::InvalidPattern(
                "inversion tuple needs at least two entries".into(),
            ));
        }
        for (j, &c) in counts.iter().enumerate() {
            let bound = d - 1 - j;
            if c > bound {
                return Err(PatternError::InvalidPattern(format!(
                    "inversion count {c} at position {} exceeds {bound}",
                    j + 1
                )));
            }
        }
        Ok(Self { counts })
    }

    pub(crate) fn from_vec_unchecked(counts: Vec<usize>) -> Self {
        debug_assert!(Self::new(counts.clone()).is_ok());
        Self { counts }
    }

    pub fn zero(d: usize) -> Result<Self> {
        Self::new(vec![0; d])
    }

    pub fn d(&self) -> usize {
        self.counts.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.counts
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.counts
    }

    /// Rebuilds the permutation tuple by inserting `d, d-1, ..., 1` in turn.
    ///
    /// Starting from `(d)`, value `v = d + 1 - l` goes to the front when
    /// `i_v = 0` and right after the `i_v`-th entry otherwise. Entries already
    /// placed are exactly the values larger than `v`, and `i_v` of them lie to
    /// the right of `v` in the window, i.e. come before `v` in sorted order.
    pub fn to_permutation(&self) -> PermutationPattern {
        let d = self.counts.len();
        let mut seq: Vec<usize> = Vec::with_capacity(d);
        seq.push(d);
        for v in (1..d).rev() {
            let at = self.counts[v - 1];
            seq.insert(at, v);
        }
        PermutationPattern { indices: seq }
    }

    pub fn to_rank(&self) -> RankPattern {
        self.to_permutation().to_rank()
    }
}

impl fmt::Display for InversionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.counts)
    }
}

/// Index order of a tie-free window, with a tie error on equal neighbours.
fn strict_argsort<T: Scalar>(w: &Window<'_, T>) -> Result<Vec<usize>> {
    let v = w.values();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| cmp_values(&v[a], &v[b]).then(a.cmp(&b)));
    for pair in idx.windows(2) {
        if v[pair[0]] == v[pair[1]] {
            return Err(PatternError::Tie {
                first: pair[0] + 1,
                second: pair[1] + 1,
            });
        }
    }
    Ok(idx.into_iter().map(|i| i + 1).collect())
}

/// Permutation representation of a tie-free window.
pub fn permutation_pattern<T: Scalar>(values: &[T]) -> Result<PermutationPattern> {
    let w = Window::new(values)?;
    Ok(PermutationPattern::from_vec_unchecked(strict_argsort(&w)?))
}

/// Rank representation of a tie-free window.
pub fn rank_pattern<T: Scalar>(values: &[T]) -> Result<RankPattern> {
    Ok(permutation_pattern(values)?.to_rank())
}

/// Inversion representation of a tie-free window.
pub fn inversion_pattern<T: Scalar>(values: &[T]) -> Result<InversionPattern> {
    inversion_pattern_counted(values).map(|(p, _)| p)
}

/// Like [`inversion_pattern`], also returning the number of value
/// comparisons performed, which is always `(d² - d) / 2` on success.
pub fn inversion_pattern_counted<T: Scalar>(values: &[T]) -> Result<(InversionPattern, u64)> {
    let w = Window::new(values)?;
    let v = w.values();
    let d = v.len();
    let mut comparisons = 0u64;
    let mut counts = vec![0usize; d];
    for j in 0..d {
        for k in j + 1..d {
            comparisons += 1;
            match cmp_values(&v[j], &v[k]) {
                Ordering::Greater => counts[j] += 1,
                Ordering::Less => {}
                Ordering::Equal => {
                    return Err(PatternError::Tie {
                        first: j + 1,
                        second: k + 1,
                    })
                }
            }
        }
    }
    Ok((InversionPattern { counts }, comparisons))
}

/// All `d!` rank patterns in lexicographic order of the rank tuple.
pub fn enumerate_patterns(d: usize) -> Result<Vec<RankPattern>> {
    if !(2..=MAX_ENUMERATION_D).contains(&d) {
        return Err(PatternError::Length {
            d,
            min: 2,
            max: MAX_ENUMERATION_D,
        });
    }
    let total: usize = (1..=d).product();
    let mut out = Vec::with_capacity(total);
    let mut current: Vec<usize> = (1..=d).collect();
    loop {
        out.push(RankPattern {
            ranks: current.clone(),
        });
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the lexicographic successor; false once the last one is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(pivot) = (0..v.len().saturating_sub(1))
        .rev()
        .find(|&i| v[i] < v[i + 1])
    else {
        return false;
    };
    let succ = (pivot + 1..v.len())
        .rev()
        .find(|&i| v[i] > v[pivot])
        .unwrap();
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

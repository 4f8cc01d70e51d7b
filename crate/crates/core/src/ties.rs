// SPDX-License-Identifier: Apache-2.0

//! Windows with tied values.
//!
//! Four strategies are supported: drop the window ([`TieStrategy::Skip`]),
//! break ties at random ([`TieStrategy::Perturb`]), break ties by position
//! ([`TieStrategy::Stable`]), or keep them through generalized patterns
//! ([`TieStrategy::Generalized`]). A generalized rank tuple `psi` assigns each
//! entry the rank of its value among the `m` distinct values of the window;
//! there are Fubini(`d`) of them, one per ordered set partition of `1..=d`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{PatternError, Result};
use crate::patterns::{cmp_values, RankPattern, Window};
use crate::scalar::Scalar;

/// Largest `d` for which [`fubini`] is computed.
pub const MAX_FUBINI_D: usize = 15;
/// Largest `d` for which generalized patterns are enumerated and coded.
pub const MAX_GENERALIZED_D: usize = 7;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum TieStrategy {
    Skip,
    Perturb {
        seed: u64,
    },
    #[default]
    Stable,
    Generalized,
}

impl fmt::Display for TieStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieStrategy::Skip => f.write_str("skip"),
            TieStrategy::Perturb { seed } => write!(f, "perturb(seed={seed})"),
            TieStrategy::Stable => f.write_str("stable"),
            TieStrategy::Generalized => f.write_str("generalized"),
        }
    }
}

/// Parses `skip`, `stable`, `generalized`, or `perturb:<seed>`.
impl FromStr for TieStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "skip" => Ok(TieStrategy::Skip),
            "stable" => Ok(TieStrategy::Stable),
            "generalized" => Ok(TieStrategy::Generalized),
            _ => match lower.strip_prefix("perturb:") {
                Some(seed) => seed
                    .parse()
                    .map(|seed| TieStrategy::Perturb { seed })
                    .map_err(|_| format!("invalid perturbation seed `{seed}`")),
                None => Err(format!("unknown tie strategy `{s}`")),
            },
        }
    }
}

/// Whether any two entries are exactly equal.
pub fn has_ties<T: Scalar>(values: &[T]) -> Result<bool> {
    Ok(Window::new(values)?.first_tie().is_some())
}

/// Rank tuple with ties broken by position: `r_j < r_k` iff `x_j < x_k`, or
/// `x_j = x_k` and `j < k`.
pub fn stable_rank<T: Scalar>(values: &[T]) -> Result<RankPattern> {
    let w = Window::new(values)?;
    let v = w.values();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    // sort_by is stable, so equal values keep their index order.
    idx.sort_by(|&a, &b| cmp_values(&v[a], &v[b]));
    let mut ranks = vec![0; v.len()];
    for (r, &i) in idx.iter().enumerate() {
        ranks[i] = r + 1;
    }
    Ok(RankPattern::from_vec_unchecked(ranks))
}

fn window_rng(seed: u64, window_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(window_index);
    rng
}

/// Resolves ties by a uniformly random order within each tied group.
///
/// Pairs of unequal values keep their order. The random order is drawn from a
/// generator keyed by `(seed, window_index)`, so the result depends on nothing
/// else. The resolved window is returned in its rank form, which is itself a
/// tie-free window with the same ordinal pattern.
pub fn perturb_resolve<T: Scalar>(
    values: &[T],
    seed: u64,
    window_index: u64,
) -> Result<RankPattern> {
    let w = Window::new(values)?;
    Ok(RankPattern::from_vec_unchecked(perturbed_ranks(
        w.values(),
        seed,
        window_index,
    )))
}

pub(crate) fn perturbed_ranks<T: Scalar>(v: &[T], seed: u64, window_index: u64) -> Vec<usize> {
    let d = v.len();
    let mut priority: Vec<usize> = (0..d).collect();
    priority.shuffle(&mut window_rng(seed, window_index));
    let mut idx: Vec<usize> = (0..d).collect();
    idx.sort_by(|&a, &b| cmp_values(&v[a], &v[b]).then(priority[a].cmp(&priority[b])));
    let mut ranks = vec![0; d];
    for (r, &i) in idx.iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

/// Generalized rank representation: `psi_j = k` iff `x_j` is the `k`-th
/// smallest of the `m` distinct values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedRankPattern {
    psi: Vec<usize>,
    m: usize,
}

impl GeneralizedRankPattern {
    /// Accepts any tuple whose values are exactly `{1, ..., m}` for some `m`.
    pub fn new(psi: Vec<usize>) -> Result<Self> {
        let d = psi.len();
        if d < 2 {
            return Err(PatternError::InvalidPattern(
                "generalized rank tuple needs at least two entries".into(),
            ));
        }
        let m = psi.iter().copied().max().unwrap_or(0);
        if m > d || psi.contains(&0) {
            return Err(PatternError::InvalidPattern(format!(
                "generalized ranks must lie in 1..={d}"
            )));
        }
        let mut seen = vec![false; m];
        for &p in &psi {
            seen[p - 1] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(PatternError::InvalidPattern(format!(
                "generalized rank {} is skipped",
                missing + 1
            )));
        }
        Ok(Self { psi, m })
    }

    pub fn d(&self) -> usize {
        self.psi.len()
    }

    /// Number of distinct values.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.psi
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.psi
    }

    /// True when no value is repeated, i.e. this is an ordinary rank tuple.
    pub fn is_strict(&self) -> bool {
        self.m == self.psi.len()
    }

    pub fn to_permutation(&self) -> GeneralizedPermutationPattern {
        let mut groups = vec![Vec::new(); self.m];
        for (j, &p) in self.psi.iter().enumerate() {
            groups[p - 1].push(j + 1);
        }
        GeneralizedPermutationPattern {
            d: self.psi.len(),
            groups,
        }
    }
}

impl fmt::Display for GeneralizedRankPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.psi.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Generalized permutation representation: the preimages of each rank,
/// i.e. an ordered partition of `1..=d` into `m` non-empty index sets.
/// Each set is stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedPermutationPattern {
    d: usize,
    groups: Vec<Vec<usize>>,
}

impl GeneralizedPermutationPattern {
    pub fn new(mut groups: Vec<Vec<usize>>) -> Result<Self> {
        let d: usize = groups.iter().map(Vec::len).sum();
        if d < 2 {
            return Err(PatternError::InvalidPattern(
                "generalized permutation needs at least two indices".into(),
            ));
        }
        let mut seen = vec![false; d];
        for g in &mut groups {
            if g.is_empty() {
                return Err(PatternError::InvalidPattern("empty index set".into()));
            }
            g.sort_unstable();
            for &i in g.iter() {
                if i == 0 || i > d || seen[i - 1] {
                    return Err(PatternError::InvalidPattern(format!(
                        "index sets do not partition 1..={d}"
                    )));
                }
                seen[i - 1] = true;
            }
        }
        Ok(Self { d, groups })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn to_rank(&self) -> GeneralizedRankPattern {
        let mut psi = vec![0; self.d];
        for (l, g) in self.groups.iter().enumerate() {
            for &i in g {
                psi[i - 1] = l + 1;
            }
        }
        GeneralizedRankPattern {
            psi,
            m: self.groups.len(),
        }
    }
}

impl fmt::Display for GeneralizedPermutationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, g) in self.groups.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            let items: Vec<String> = g.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", items.join(", "))?;
        }
        f.write_str(")")
    }
}

/// Generalized ranks plus the number of value comparisons spent.
pub(crate) fn generalized_rank_counted<T: Scalar>(v: &[T]) -> (Vec<usize>, u64) {
    let mut comparisons = 0u64;
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| {
        comparisons += 1;
        cmp_values(&v[a], &v[b])
    });
    let mut psi = vec![0; v.len()];
    let mut rank = 1;
    psi[idx[0]] = 1;
    for pair in idx.windows(2) {
        comparisons += 1;
        if cmp_values(&v[pair[0]], &v[pair[1]]) == Ordering::Less {
            rank += 1;
        }
        psi[pair[1]] = rank;
    }
    (psi, comparisons)
}

pub fn generalized_rank<T: Scalar>(values: &[T]) -> Result<GeneralizedRankPattern> {
    let w = Window::new(values)?;
    let (psi, _) = generalized_rank_counted(w.values());
    let m = psi.iter().copied().max().unwrap_or(0);
    Ok(GeneralizedRankPattern { psi, m })
}

pub fn generalized_permutation<T: Scalar>(values: &[T]) -> Result<GeneralizedPermutationPattern> {
    Ok(generalized_rank(values)?.to_permutation())
}

/// Number of ordered set partitions of a `d`-set:
/// `a(n) = sum_{k=1..n} C(n, k) a(n - k)`, `a(0) = 1`.
pub fn fubini(d: usize) -> Result<u64> {
    if d > MAX_FUBINI_D {
        return Err(PatternError::Length {
            d,
            min: 0,
            max: MAX_FUBINI_D,
        });
    }
    let mut a = vec![1u64; d + 1];
    let mut binom = vec![vec![1u64; d + 1]; d + 1];
    for n in 1..=d {
        for k in 1..n {
            binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
        }
    }
    for n in 1..=d {
        a[n] = (1..=n).map(|k| binom[n][k] * a[n - k]).sum();
    }
    Ok(a[d])
}

fn check_generalized_d(d: usize) -> Result<()> {
    if (2..=MAX_GENERALIZED_D).contains(&d) {
        Ok(())
    } else {
        Err(PatternError::Length {
            d,
            min: 2,
            max: MAX_GENERALIZED_D,
        })
    }
}

/// All generalized rank tuples of length `d`, lexicographically ascending.
pub fn enumerate_generalized(d: usize) -> Result<Vec<GeneralizedRankPattern>> {
    check_generalized_d(d)?;
    let mut out = Vec::with_capacity(fubini(d)? as usize);
    let mut prefix = Vec::with_capacity(d);
    let mut used = vec![0usize; d + 1];
    extend_generalized(d, &mut prefix, &mut used, &mut out);
    Ok(out)
}

fn extend_generalized(
    d: usize,
    prefix: &mut Vec<usize>,
    used: &mut [usize],
    out: &mut Vec<GeneralizedRankPattern>,
) {
    let max = prefix.iter().copied().max().unwrap_or(0);
    let distinct = used[1..=max.max(1)].iter().filter(|&&c| c > 0).count();
    let missing = max - distinct.min(max);
    let remaining = d - prefix.len();
    if missing > remaining {
        return;
    }
    if remaining == 0 {
        out.push(GeneralizedRankPattern {
            psi: prefix.clone(),
            m: max,
        });
        return;
    }
    for v in 1..=d {
        prefix.push(v);
        used[v] += 1;
        extend_generalized(d, prefix, used, out);
        used[v] -= 1;
        prefix.pop();
    }
}

/// Bijection between generalized patterns of length `d` and
/// `0..fubini(d)`, by position in [`enumerate_generalized`].
#[derive(Debug, Clone)]
pub struct GeneralizedCodec {
    d: usize,
    // Base-(d+1) packing of psi, most significant entry first, so the numeric
    // order of keys equals the lexicographic order of tuples.
    keys: Vec<u64>,
}

impl GeneralizedCodec {
    pub fn new(d: usize) -> Result<Self> {
        let keys = enumerate_generalized(d)?
            .iter()
            .map(|p| pack(d, p.as_slice()))
            .collect();
        Ok(Self { d, keys })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn code_of(&self, pattern: &GeneralizedRankPattern) -> Result<u64> {
        if pattern.d() != self.d {
            return Err(PatternError::InvalidPattern(format!(
                "expected a generalized tuple of length {}, got {}",
                self.d,
                pattern.d()
            )));
        }
        Ok(self.code_of_slice(pattern.as_slice()))
    }

    #[inline]
    pub(crate) fn code_of_slice(&self, psi: &[usize]) -> u64 {
        let key = pack(self.d, psi);
        self.keys
            .binary_search(&key)
            .expect("valid generalized tuple is always enumerated") as u64
    }

    pub fn pattern(&self, code: u64) -> Result<GeneralizedRankPattern> {
        let key = *self.keys.get(code as usize).ok_or(PatternError::Range {
            value: code,
            size: self.keys.len() as u64,
        })?;
        GeneralizedRankPattern::new(unpack(self.d, key))
    }
}

fn pack(d: usize, psi: &[usize]) -> u64 {
    psi.iter()
        .fold(0u64, |acc, &p| acc * (d as u64 + 1) + p as u64)
}

fn unpack(d: usize, mut key: u64) -> Vec<usize> {
    let base = d as u64 + 1;
    let mut psi = vec![0; d];
    for slot in psi.iter_mut().rev() {
        *slot = (key % base) as usize;
        key /= base;
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_detection() {
        assert!(has_ties(&[4, 4, 6]).unwrap());
        assert!(!has_ties(&[9.0, 5.0, 4.0, 10.0, 8.0]).unwrap());
        assert!(has_ties(&[7, 7]).unwrap());
        assert_eq!(
            has_ties(&[1.0, f64::NAN]),
            Err(PatternError::NonFinite { position: 2 })
        );
    }

    #[test]
    fn stable_examples() {
        assert_eq!(stable_rank(&[1, 1, 1]).unwrap().as_slice(), &[1, 2, 3]);
        assert_eq!(stable_rank(&[1, 10, 100]).unwrap().as_slice(), &[1, 2, 3]);
        assert_eq!(stable_rank(&[5, 3, 5]).unwrap().as_slice(), &[2, 1, 3]);
        assert!(stable_rank(&[0.0, f64::NAN]).is_err());
    }

    #[test]
    fn perturb_without_ties_is_identity() {
        for seed in 0..20 {
            assert_eq!(
                perturb_resolve(&[1, 2, 3], seed, 0).unwrap().as_slice(),
                &[1, 2, 3]
            );
        }
    }

    #[test]
    fn perturb_is_deterministic() {
        let w = [7, 7, 7, 7, 2];
        for seed in 0..50 {
            assert_eq!(
                perturb_resolve(&w, seed, 11).unwrap(),
                perturb_resolve(&w, seed, 11).unwrap()
            );
        }
    }

    #[test]
    fn generalized_examples() {
        let g = generalized_rank(&[1, 5, 4, 3]).unwrap();
        assert_eq!((g.as_slice(), g.m()), (&[1, 4, 3, 2][..], 4));
        let g = generalized_rank(&[1, 1, 4, 3]).unwrap();
        assert_eq!((g.as_slice(), g.m()), (&[1, 1, 3, 2][..], 3));
        let g = generalized_rank(&[2, 2, 2]).unwrap();
        assert_eq!((g.as_slice(), g.m()), (&[1, 1, 1][..], 1));
    }

    #[test]
    fn generalized_permutation_examples() {
        let groups = |v: &[i32]| generalized_permutation(v).unwrap().groups().to_vec();
        assert_eq!(groups(&[4, 4, 6]), vec![vec![1, 2], vec![3]]);
        assert_eq!(groups(&[1, 2, 3]), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(groups(&[5, 3, 5]), vec![vec![2], vec![1, 3]]);
        assert_eq!(
            generalized_permutation(&[4, 4, 6]).unwrap().to_string(),
            "({1, 2}, {3})"
        );
    }

    #[test]
    fn generalized_round_trip() {
        for p in enumerate_generalized(4).unwrap() {
            assert_eq!(p.to_permutation().to_rank(), p);
            let regrouped =
                GeneralizedPermutationPattern::new(p.to_permutation().groups().to_vec());
            assert_eq!(regrouped.unwrap().to_rank(), p);
        }
    }

    #[test]
    fn invalid_generalized() {
        assert!(GeneralizedRankPattern::new(vec![1, 3, 3]).is_err());
        assert!(GeneralizedRankPattern::new(vec![0, 1]).is_err());
        assert!(GeneralizedRankPattern::new(vec![1]).is_err());
        assert!(GeneralizedRankPattern::new(vec![2, 1, 2]).is_ok());
        assert!(GeneralizedPermutationPattern::new(vec![vec![1], vec![]]).is_err());
        assert!(GeneralizedPermutationPattern::new(vec![vec![1, 2], vec![2]]).is_err());
        assert!(GeneralizedPermutationPattern::new(vec![vec![1, 4], vec![2]]).is_err());
    }

    #[test]
    fn fubini_values() {
        assert_eq!(fubini(0).unwrap(), 1);
        assert_eq!(fubini(1).unwrap(), 1);
        assert_eq!(fubini(2).unwrap(), 3);
        assert_eq!(fubini(3).unwrap(), 13);
        assert_eq!(fubini(4).unwrap(), 75);
        assert!(fubini(16).is_err());
    }

    #[test]
    fn enumeration() {
        let two: Vec<_> = enumerate_generalized(2)
            .unwrap()
            .into_iter()
            .map(GeneralizedRankPattern::into_vec)
            .collect();
        assert_eq!(two, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        let three = enumerate_generalized(3).unwrap();
        assert_eq!(three.len(), 13);
        assert_eq!(three[0].as_slice(), &[1, 1, 1]);
        for d in 2..=6 {
            let all = enumerate_generalized(d).unwrap();
            assert_eq!(all.len() as u64, fubini(d).unwrap());
            assert!(all.windows(2).all(|w| w[0].as_slice() < w[1].as_slice()));
        }
        assert!(enumerate_generalized(8).is_err());
        assert!(enumerate_generalized(1).is_err());
    }

    #[test]
    fn codec_round_trip() {
        let codec = GeneralizedCodec::new(4).unwrap();
        assert_eq!(codec.len(), 75);
        for (code, p) in enumerate_generalized(4).unwrap().iter().enumerate() {
            assert_eq!(codec.code_of(p).unwrap(), code as u64);
            assert_eq!(&codec.pattern(code as u64).unwrap(), p);
        }
        assert!(codec.pattern(75).is_err());
    }

    #[test]
    fn strategy_parse() {
        assert_eq!("skip".parse::<TieStrategy>().unwrap(), TieStrategy::Skip);
        assert_eq!(
            "perturb:42".parse::<TieStrategy>().unwrap(),
            TieStrategy::Perturb { seed: 42 }
        );
        assert!("perturb".parse::<TieStrategy>().is_err());
        assert!("random".parse::<TieStrategy>().is_err());
    }
}

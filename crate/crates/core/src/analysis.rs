// SPDX-License-Identifier: Apache-2.0

//! Sliding-window pattern extraction and the statistics built on it.
//!
//! Window `t` (zero-based) of a series `x` is
//! `(x[t], x[t + lag], ..., x[t + (d - 1) lag])`; windows overlap, so a series
//! of length `n` yields `n - (d - 1) lag` of them. Strict patterns are coded
//! straight from the right inversion counts with one comparison per pair of
//! entries, `(d² - d) / 2` per window.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use rayon::prelude::*;

use crate::encoding::{CodeSpace, Encoder, EncodingScheme, PatternCode, MAX_ENCODED_D};
use crate::error::{PatternError, Result};
use crate::inversions::CodeReflector;
use crate::patterns::{cmp_values, inversion_counts};
use crate::scalar::Scalar;
use crate::ties::{
    generalized_rank_counted, perturbed_ranks, GeneralizedCodec, TieStrategy, MAX_GENERALIZED_D,
};

/// Offset applied to the perturbation seed of the second series in [`opd`],
/// so the two series break their ties independently.
const SECOND_SERIES_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionConfig {
    /// Pattern length.
    pub d: usize,
    /// Distance between consecutive window entries, in samples.
    pub lag: usize,
    pub strategy: TieStrategy,
    /// Ignored under [`TieStrategy::Generalized`].
    pub scheme: EncodingScheme,
}

impl ExtractionConfig {
    /// Consecutive entries, stable tie order, Lehmer codes.
    pub fn new(d: usize) -> Self {
        Self {
            d,
            lag: 1,
            strategy: TieStrategy::Stable,
            scheme: EncodingScheme::Lehmer,
        }
    }

    pub fn with_lag(mut self, lag: usize) -> Self {
        self.lag = lag;
        self
    }

    pub fn with_strategy(mut self, strategy: TieStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_scheme(mut self, scheme: EncodingScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn code_space(&self) -> CodeSpace {
        match self.strategy {
            TieStrategy::Generalized => CodeSpace::Generalized,
            _ => CodeSpace::Permutation(self.scheme),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let max = match self.strategy {
            TieStrategy::Generalized => MAX_GENERALIZED_D,
            _ => MAX_ENCODED_D,
        };
        if !(2..=max).contains(&self.d) {
            return Err(PatternError::Length {
                d: self.d,
                min: 2,
                max,
            });
        }
        if self.lag == 0 {
            return Err(PatternError::InvalidLag);
        }
        Ok(())
    }

    /// Number of windows in a series of length `n`.
    pub fn window_count(&self, n: usize) -> Result<usize> {
        let span = (self.d - 1) * self.lag;
        if n <= span {
            return Err(PatternError::SeriesTooShort {
                len: n,
                d: self.d,
                lag: self.lag,
            });
        }
        Ok(n - span)
    }
}

/// Extraction state for one configuration: encoding weights or the
/// generalized pattern table, built once and shared across windows.
#[derive(Debug, Clone)]
pub struct Extractor {
    cfg: ExtractionConfig,
    space: CodeSpace,
    encoder: Option<Encoder>,
    codec: Option<GeneralizedCodec>,
}

impl Extractor {
    pub fn new(cfg: ExtractionConfig) -> Result<Self> {
        cfg.validate()?;
        let (encoder, codec) = match cfg.strategy {
            TieStrategy::Generalized => (None, Some(GeneralizedCodec::new(cfg.d)?)),
            _ => (Some(Encoder::new(cfg.d, cfg.scheme)?), None),
        };
        Ok(Self {
            cfg,
            space: cfg.code_space(),
            encoder,
            codec,
        })
    }

    pub fn config(&self) -> &ExtractionConfig {
        &self.cfg
    }

    pub fn code_space(&self) -> CodeSpace {
        self.space
    }

    /// Checks the series and returns its window count.
    fn prepare<T: Scalar>(&self, series: &[T]) -> Result<usize> {
        let windows = self.cfg.window_count(series.len())?;
        if let Some(p) = series.iter().position(|v| !v.is_finite_value()) {
            return Err(PatternError::NonFinite { position: p + 1 });
        }
        Ok(windows)
    }

    pub fn extract<T: Scalar>(&self, series: &[T]) -> Result<Vec<Option<PatternCode>>> {
        self.extract_counted(series).map(|(codes, _)| codes)
    }

    /// Codes plus the total number of value comparisons.
    pub fn extract_counted<T: Scalar>(
        &self,
        series: &[T],
    ) -> Result<(Vec<Option<PatternCode>>, u64)> {
        let windows = self.prepare(series)?;
        Ok(self.extract_range(series, 0..windows))
    }

    /// Splits the windows into chunks of `chunk_windows` and extracts them on
    /// the rayon pool. The output equals [`Extractor::extract`].
    pub fn extract_parallel<T: Scalar>(
        &self,
        series: &[T],
        chunk_windows: usize,
    ) -> Result<Vec<Option<PatternCode>>> {
        let windows = self.prepare(series)?;
        let chunk = chunk_windows.max(1);
        let starts: Vec<usize> = (0..windows).step_by(chunk).collect();
        let parts: Vec<Vec<Option<PatternCode>>> = starts
            .into_par_iter()
            .map(|s| self.extract_range(series, s..(s + chunk).min(windows)).0)
            .collect();
        Ok(parts.concat())
    }

    /// Extracts windows with start indices in `starts`. The series must
    /// already be validated and every start must have a full window.
    fn extract_range<T: Scalar>(
        &self,
        series: &[T],
        starts: Range<usize>,
    ) -> (Vec<Option<PatternCode>>, u64) {
        let d = self.cfg.d;
        let lag = self.cfg.lag;
        let mut comparisons = 0u64;
        let mut out = Vec::with_capacity(starts.len());
        let mut buf: Vec<T> = Vec::with_capacity(d);
        for t in starts {
            let window: &[T] = if lag == 1 {
                &series[t..t + d]
            } else {
                buf.clear();
                buf.extend((0..d).map(|k| series[t + k * lag]));
                &buf
            };
            let code = self
                .window_code(window, t as u64, &mut comparisons)
                .map(|v| PatternCode::new_unchecked(d, self.space, v));
            out.push(code);
        }
        (out, comparisons)
    }

    #[inline]
    fn window_code<T: Scalar>(&self, w: &[T], index: u64, comparisons: &mut u64) -> Option<u64> {
        if let Some(codec) = &self.codec {
            let (psi, n) = generalized_rank_counted(w);
            *comparisons += n;
            return Some(codec.code_of_slice(&psi));
        }
        let enc = self
            .encoder
            .as_ref()
            .expect("strict strategies carry an encoder");
        let weights = enc.weights();
        let d = w.len();
        let mut value = 0u64;
        let mut tied = false;
        for j in 0..d {
            let mut count = 0u64;
            for k in j + 1..d {
                *comparisons += 1;
                match cmp_values(&w[j], &w[k]) {
                    Ordering::Greater => count += 1,
                    Ordering::Less => {}
                    // Counting only strict inversions orders ties by position.
                    Ordering::Equal => tied = true,
                }
            }
            value += count * weights[j];
        }
        if !tied {
            return Some(value);
        }
        match self.cfg.strategy {
            TieStrategy::Skip => None,
            TieStrategy::Stable => Some(value),
            TieStrategy::Perturb { seed } => {
                let ranks = perturbed_ranks(w, seed, index);
                Some(enc.encode_counts(&inversion_counts(&ranks)))
            }
            TieStrategy::Generalized => unreachable!("handled by the codec branch"),
        }
    }
}

/// One optional code per window; `None` marks a window dropped by
/// [`TieStrategy::Skip`].
pub fn pattern_sequence<T: Scalar>(
    series: &[T],
    cfg: &ExtractionConfig,
) -> Result<Vec<Option<PatternCode>>> {
    Extractor::new(*cfg)?.extract(series)
}

/// [`pattern_sequence`] computed over chunks in parallel.
pub fn pattern_sequence_parallel<T: Scalar>(
    series: &[T],
    cfg: &ExtractionConfig,
    chunk_windows: usize,
) -> Result<Vec<Option<PatternCode>>> {
    Extractor::new(*cfg)?.extract_parallel(series, chunk_windows)
}

/// [`pattern_sequence`] plus the number of value comparisons made.
pub fn extract_with_counter<T: Scalar>(
    series: &[T],
    cfg: &ExtractionConfig,
) -> Result<(Vec<Option<PatternCode>>, u64)> {
    Extractor::new(*cfg)?.extract_counted(series)
}

/// Empirical distribution of pattern codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDistribution {
    d: usize,
    space: CodeSpace,
    counts: BTreeMap<u64, u64>,
    total: u64,
    skipped: u64,
}

impl PatternDistribution {
    pub fn empty(d: usize, space: CodeSpace) -> Result<Self> {
        space.size(d)?;
        Ok(Self {
            d,
            space,
            counts: BTreeMap::new(),
            total: 0,
            skipped: 0,
        })
    }

    /// Counts present codes and the number of absent ones. Every present code
    /// must have length `d` and live in `space`.
    pub fn from_codes(codes: &[Option<PatternCode>], d: usize, space: CodeSpace) -> Result<Self> {
        let mut dist = Self::empty(d, space)?;
        for code in codes {
            match code {
                Some(c) if c.d() != d || c.space() != space => {
                    return Err(PatternError::MixedConfig)
                }
                Some(c) => dist.record(c.value()),
                None => dist.skipped += 1,
            }
        }
        Ok(dist)
    }

    /// Like [`PatternDistribution::from_codes`] for raw values, which are
    /// range-checked against the space.
    pub fn from_values<I>(values: I, d: usize, space: CodeSpace) -> Result<Self>
    where
        I: IntoIterator<Item = Option<u64>>,
    {
        let mut dist = Self::empty(d, space)?;
        let size = space.size(d)?;
        for v in values {
            match v {
                Some(v) if v >= size => return Err(PatternError::Range { value: v, size }),
                Some(v) => dist.record(v),
                None => dist.skipped += 1,
            }
        }
        Ok(dist)
    }

    fn record(&mut self, value: u64) {
        *self.counts.entry(value).or_insert(0) += 1;
        self.total += 1;
    }

    /// Adds the counts of `other`. Merging is associative and commutative.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if self.d != other.d || self.space != other.space {
            return Err(PatternError::MixedConfig);
        }
        for (&code, &n) in &other.counts {
            *self.counts.entry(code).or_insert(0) += n;
        }
        self.total += other.total;
        self.skipped += other.skipped;
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> CodeSpace {
        self.space
    }

    /// Observed codes with non-zero counts.
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, code: u64) -> u64 {
        self.counts.get(&code).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    /// `None` while the distribution is empty.
    pub fn frequency(&self, code: u64) -> Option<f64> {
        (self.total > 0).then(|| self.count(code) as f64 / self.total as f64)
    }

    /// Relative frequencies of the observed codes; empty when nothing was counted.
    pub fn frequencies(&self) -> Vec<(u64, f64)> {
        let total = self.total as f64;
        self.counts
            .iter()
            .map(|(&c, &n)| (c, n as f64 / total))
            .collect()
    }
}

pub fn pattern_distribution(
    codes: &[Option<PatternCode>],
    d: usize,
    space: CodeSpace,
) -> Result<PatternDistribution> {
    PatternDistribution::from_codes(codes, d, space)
}

/// Shannon entropy in nats.
pub fn pattern_entropy(dist: &PatternDistribution) -> Result<f64> {
    if dist.total() == 0 {
        return Err(PatternError::EmptyDistribution);
    }
    Ok(dist
        .frequencies()
        .into_iter()
        .map(|(_, p)| -p * p.ln())
        .sum::<f64>())
}

/// Ordinal pattern dependence between two aligned series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpdReport {
    pub d: usize,
    /// Standardized rate of equal patterns at equal times.
    pub alpha_pos: f64,
    /// Standardized rate of reflected patterns at equal times.
    pub alpha_neg: f64,
    /// `alpha_pos` if it dominates, otherwise `-alpha_neg`.
    pub signed: f64,
    /// Windows present in both series.
    pub n_windows: u64,
    /// Set when a coefficient could not be standardized (no windows, or the
    /// chance agreement is already 1); such coefficients are reported as 0.
    pub degenerate: bool,
}

/// Ordinal pattern dependence of `x` and `y`.
///
/// With `p` the share of windows where both patterns agree and `q` the
/// agreement expected from the two marginal distributions,
/// `alpha = (p - q) / (1 - q)`. The negative side compares `x` against the
/// space-reflected patterns of `y`. Windows skipped in either series are left
/// out of every estimate.
pub fn opd<T: Scalar>(x: &[T], y: &[T], cfg: &ExtractionConfig) -> Result<OpdReport> {
    if x.len() != y.len() {
        return Err(PatternError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let cx = Extractor::new(*cfg)?.extract(x)?;
    let cfg_y = match cfg.strategy {
        TieStrategy::Perturb { seed } => cfg.with_strategy(TieStrategy::Perturb {
            seed: seed.wrapping_add(SECOND_SERIES_SEED_OFFSET),
        }),
        _ => *cfg,
    };
    let cy = Extractor::new(cfg_y)?.extract(y)?;
    let reflector = CodeReflector::new(cfg.d, cfg.code_space())?;

    let mut reflected: HashMap<u64, u64> = HashMap::new();
    let mut marg_x: HashMap<u64, u64> = HashMap::new();
    let mut marg_y: HashMap<u64, u64> = HashMap::new();
    let (mut n, mut same, mut opposite) = (0u64, 0u64, 0u64);
    for (a, b) in cx.iter().zip(&cy) {
        let (Some(a), Some(b)) = (a, b) else { continue };
        let (a, b) = (a.value(), b.value());
        let rb = match reflected.get(&b) {
            Some(&r) => r,
            None => {
                let r = reflector.reflect_value(b)?;
                reflected.insert(b, r);
                r
            }
        };
        n += 1;
        same += u64::from(a == b);
        opposite += u64::from(a == rb);
        *marg_x.entry(a).or_insert(0) += 1;
        *marg_y.entry(b).or_insert(0) += 1;
    }

    let mut degenerate = n == 0;
    let mut standardize = |hits: u64, chance_pairs: u128| -> f64 {
        if n == 0 {
            return 0.0;
        }
        let nf = n as f64;
        let p = hits as f64 / nf;
        let q = chance_pairs as f64 / (nf * nf);
        if 1.0 - q <= f64::EPSILON {
            degenerate = true;
            return 0.0;
        }
        (p - q) / (1.0 - q)
    };

    let mut chance_pos = 0u128;
    let mut chance_neg = 0u128;
    for (&c, &nx) in &marg_x {
        chance_pos += nx as u128 * marg_y.get(&c).copied().unwrap_or(0) as u128;
        // Reflection is an involution, so the reflected y-count of c is the
        // y-count of c's reflection.
        let rc = reflector.reflect_value(c)?;
        chance_neg += nx as u128 * marg_y.get(&rc).copied().unwrap_or(0) as u128;
    }
    let alpha_pos = standardize(same, chance_pos);
    let alpha_neg = standardize(opposite, chance_neg);
    let signed = if alpha_pos >= alpha_neg {
        alpha_pos
    } else {
        -alpha_neg
    };
    Ok(OpdReport {
        d: cfg.d,
        alpha_pos,
        alpha_neg,
        signed,
        n_windows: n,
        degenerate,
    })
}

// SPDX-License-Identifier: Apache-2.0

//! Integer codes for ordinal patterns.
//!
//! Both schemes are weighted sums of the right inversion counts and map the
//! `d!` patterns bijectively onto `0..d!`:
//!
//! * [`EncodingScheme::Lehmer`]: weight `(d - j)!` for position `j`. This is
//!   the factorial number system read most-significant digit first, so the
//!   code order equals the lexicographic order of the rank tuples.
//! * [`EncodingScheme::Kse`]: weight `d! / (d - j + 1)!`, the same digits read
//!   least-significant first. Its order is not lexicographic in the ranks.

use std::fmt;
use std::str::FromStr;

use crate::error::{PatternError, Result};
use crate::patterns::{enumerate_patterns, InversionPattern, RankPattern};
use crate::ties::fubini;

/// Largest pattern length whose `d!` fits into `u64`.
pub const MAX_ENCODED_D: usize = 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EncodingScheme {
    Kse,
    #[default]
    Lehmer,
}

impl fmt::Display for EncodingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingScheme::Kse => "kse",
            EncodingScheme::Lehmer => "lehmer",
        })
    }
}

impl FromStr for EncodingScheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kse" => Ok(EncodingScheme::Kse),
            "lehmer" | "lc" => Ok(EncodingScheme::Lehmer),
            other => Err(format!("unknown encoding scheme `{other}`")),
        }
    }
}

/// The set a code indexes into: the `d!` strict patterns under an encoding
/// scheme, or the generalized (tie-aware) patterns in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeSpace {
    Permutation(EncodingScheme),
    Generalized,
}

impl CodeSpace {
    /// Number of distinct codes for pattern length `d`.
    pub fn size(&self, d: usize) -> Result<u64> {
        match self {
            CodeSpace::Permutation(_) => factorial(d).ok_or(PatternError::Overflow { d }),
            CodeSpace::Generalized => fubini(d),
        }
    }
}

impl fmt::Display for CodeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpace::Permutation(s) => s.fmt(f),
            CodeSpace::Generalized => f.write_str("generalized"),
        }
    }
}

impl FromStr for CodeSpace {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("generalized") {
            Ok(CodeSpace::Generalized)
        } else {
            s.parse().map(CodeSpace::Permutation)
        }
    }
}

/// A pattern code together with the length and space it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternCode {
    d: usize,
    space: CodeSpace,
    value: u64,
}

impl PatternCode {
    pub fn new(d: usize, space: CodeSpace, value: u64) -> Result<Self> {
        if d < 2 {
            return Err(PatternError::Length {
                d,
                min: 2,
                max: MAX_ENCODED_D,
            });
        }
        let size = space.size(d)?;
        if value >= size {
            return Err(PatternError::Range { value, size });
        }
        Ok(Self { d, space, value })
    }

    pub(crate) fn new_unchecked(d: usize, space: CodeSpace, value: u64) -> Self {
        Self { d, space, value }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> CodeSpace {
        self.space
    }

    pub fn value(&self) -> u64 {
        self.value
    }
}

pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Precomputed weights for one `(d, scheme)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoder {
    d: usize,
    scheme: EncodingScheme,
    weights: Vec<u64>,
    size: u64,
}

impl Encoder {
    pub fn new(d: usize, scheme: EncodingScheme) -> Result<Self> {
        if d < 2 {
            return Err(PatternError::Length {
                d,
                min: 2,
                max: MAX_ENCODED_D,
            });
        }
        let size = factorial(d).ok_or(PatternError::Overflow { d })?;
        // Position j (zero-based) has radix d - j.
        let weights = (0..d)
            .map(|j| match scheme {
                EncodingScheme::Lehmer => factorial(d - 1 - j).unwrap(),
                EncodingScheme::Kse => size / factorial(d - j).unwrap(),
            })
            .collect();
        Ok(Self {
            d,
            scheme,
            weights,
            size,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn scheme(&self) -> EncodingScheme {
        self.scheme
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of codes, `d!`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn encode(&self, pattern: &InversionPattern) -> Result<PatternCode> {
        if pattern.d() != self.d {
            return Err(PatternError::InvalidPattern(format!(
                "expected an inversion tuple of length {}, got {}",
                self.d,
                pattern.d()
            )));
        }
        Ok(PatternCode::new_unchecked(
            self.d,
            CodeSpace::Permutation(self.scheme),
            self.encode_counts(pattern.as_slice()),
        ))
    }

    #[inline]
    pub(crate) fn encode_counts(&self, counts: &[usize]) -> u64 {
        counts
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| c as u64 * w)
            .sum()
    }

    /// Mixed-radix digit extraction: `i_j = (value / w_j) mod (d - j + 1)`.
    pub fn decode(&self, value: u64) -> Result<InversionPattern> {
        if value >= self.size {
            return Err(PatternError::Range {
                value,
                size: self.size,
            });
        }
        let counts = self
            .weights
            .iter()
            .enumerate()
            .map(|(j, &w)| ((value / w) % (self.d - j) as u64) as usize)
            .collect();
        Ok(InversionPattern::from_vec_unchecked(counts))
    }
}

/// Encodes inversion counts under `scheme`.
pub fn encode(pattern: &InversionPattern, scheme: EncodingScheme) -> Result<PatternCode> {
    Encoder::new(pattern.d(), scheme)?.encode(pattern)
}

/// Decodes a code back to its inversion counts. Generalized codes have no
/// inversion representation and are rejected.
pub fn decode(code: &PatternCode) -> Result<InversionPattern> {
    match code.space() {
        CodeSpace::Permutation(scheme) => Encoder::new(code.d(), scheme)?.decode(code.value()),
        CodeSpace::Generalized => Err(PatternError::InvalidPattern(
            "generalized patterns have no inversion representation".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTableRow {
    pub rank: RankPattern,
    pub inversion: InversionPattern,
    pub kse: u64,
    pub lehmer: u64,
}

/// Every pattern of length `d` with both codes, ordered by rank tuple.
pub fn code_table(d: usize) -> Result<Vec<CodeTableRow>> {
    let kse = Encoder::new(d, EncodingScheme::Kse)?;
    let lehmer = Encoder::new(d, EncodingScheme::Lehmer)?;
    Ok(enumerate_patterns(d)?
        .into_iter()
        .map(|rank| {
            let inversion = rank.to_inversion();
            CodeTableRow {
                kse: kse.encode_counts(inversion.as_slice()),
                lehmer: lehmer.encode_counts(inversion.as_slice()),
                rank,
                inversion,
            }
        })
        .collect())
}

// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by pattern construction, encoding and extraction.
///
/// Positions reported in [`PatternError::Tie`] and [`PatternError::NonFinite`]
/// are one-based, like the pattern tuples themselves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern length {d} is outside the supported range {min}..={max}")]
    Length { d: usize, min: usize, max: usize },

    #[error("series of length {len} is too short for d = {d} and lag = {lag}")]
    SeriesTooShort { len: usize, d: usize, lag: usize },

    #[error("lag must be at least 1")]
    InvalidLag,

    #[error("window has tied values at positions {first} and {second}")]
    Tie { first: usize, second: usize },

    #[error("non-finite value at position {position}")]
    NonFinite { position: usize },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("{d}! does not fit into 64 bits")]
    Overflow { d: usize },

    #[error("code {value} is out of range, there are only {size} patterns")]
    Range { value: u64, size: u64 },

    #[error("codes do not share the same pattern length and code space")]
    MixedConfig,

    #[error("distribution has no observations")]
    EmptyDistribution,

    #[error("series lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, PatternError>;

// SPDX-License-Identifier: Apache-2.0

//! Ordinal patterns of windows of real-valued data.
//!
//! Three tuple representations (rank, permutation, inversion counts) and the
//! conversions among them live in [`patterns`]. [`encoding`] maps inversion
//! counts onto integers in `0..d!`, [`inversions`] implements reflections in
//! space and time, [`ties`] the tie-handling strategies including generalized
//! patterns, and [`analysis`] the sliding-window pipeline (distributions,
//! entropy, ordinal pattern dependence). [`io`] reads CSV series and renders
//! the reports used by the `ordpat` binary.
//!
//! All extraction routines are generic over [`Scalar`], so windows of `f32`,
//! `f64`, integers or exact rationals are handled by the same code.

pub mod analysis;
pub mod encoding;
pub mod error;
pub mod inversions;
pub mod io;
pub mod patterns;
pub mod scalar;
pub mod ties;

pub use analysis::{
    extract_with_counter, opd, pattern_distribution, pattern_entropy, pattern_sequence,
    pattern_sequence_parallel, ExtractionConfig, Extractor, OpdReport, PatternDistribution,
};
pub use encoding::{
    code_table, decode, encode, CodeSpace, CodeTableRow, Encoder, EncodingScheme, PatternCode,
};
pub use error::{PatternError, Result};
pub use inversions::{reflect_code, CodeReflector, Invert};
pub use patterns::{
    enumerate_patterns, inversion_pattern, inversion_pattern_counted, permutation_pattern,
    rank_pattern, InversionPattern, PermutationPattern, RankPattern, Window,
};
pub use scalar::Scalar;
pub use ties::{
    enumerate_generalized, fubini, generalized_permutation, generalized_rank, has_ties,
    perturb_resolve, stable_rank, GeneralizedCodec, GeneralizedPermutationPattern,
    GeneralizedRankPattern, TieStrategy,
};

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i64>;

/// Window over double-precision samples, the type the CLI works with.
pub type Window64<'a> = Window<'a, f64>;
/// Window over single-precision samples.
pub type Window32<'a> = Window<'a, f32>;
/// Window over exact rationals.
pub type RationalWindow<'a> = Window<'a, Rational>;

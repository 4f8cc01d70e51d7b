// SPDX-License-Identifier: Apache-2.0

//! Reflections of ordinal patterns.
//!
//! Inversion in space is the pattern of `(-x_1, ..., -x_d)`, inversion in
//! time the pattern of `(x_d, ..., x_1)`. Rank and permutation tuples swap
//! roles: what is a reversal for one is a complement `d + 1 - v` for the
//! other. Inversion counts have the closed form `i^s_j = d - j - i_j` in
//! space; in time the result is a left non-inversion count of the original
//! and is recomputed from the reversed rank tuple.

use crate::encoding::{CodeSpace, Encoder, PatternCode};
use crate::error::Result;
use crate::patterns::{inversion_counts, InversionPattern, PermutationPattern, RankPattern};
use crate::ties::{GeneralizedCodec, GeneralizedRankPattern};

pub trait Invert: Sized {
    /// Pattern of the window reflected on a horizontal line.
    fn invert_space(&self) -> Self;
    /// Pattern of the window read backwards.
    fn invert_time(&self) -> Self;
}

impl Invert for RankPattern {
    fn invert_space(&self) -> Self {
        let d = self.d();
        RankPattern::from_vec_unchecked(self.as_slice().iter().map(|r| d + 1 - r).collect())
    }

    fn invert_time(&self) -> Self {
        RankPattern::from_vec_unchecked(self.as_slice().iter().rev().copied().collect())
    }
}

impl Invert for PermutationPattern {
    fn invert_space(&self) -> Self {
        PermutationPattern::from_vec_unchecked(self.as_slice().iter().rev().copied().collect())
    }

    fn invert_time(&self) -> Self {
        let d = self.d();
        PermutationPattern::from_vec_unchecked(self.as_slice().iter().map(|p| d + 1 - p).collect())
    }
}

impl Invert for InversionPattern {
    fn invert_space(&self) -> Self {
        let d = self.d();
        InversionPattern::from_vec_unchecked(
            self.as_slice()
                .iter()
                .enumerate()
                .map(|(j, &c)| d - 1 - j - c)
                .collect(),
        )
    }

    fn invert_time(&self) -> Self {
        let reversed: Vec<usize> = self.to_rank().as_slice().iter().rev().copied().collect();
        InversionPattern::from_vec_unchecked(inversion_counts(&reversed))
    }
}

impl Invert for GeneralizedRankPattern {
    fn invert_space(&self) -> Self {
        let m = self.m();
        GeneralizedRankPattern::new(self.as_slice().iter().map(|p| m + 1 - p).collect())
            .expect("complement of a surjective tuple is surjective")
    }

    fn invert_time(&self) -> Self {
        GeneralizedRankPattern::new(self.as_slice().iter().rev().copied().collect())
            .expect("reversal keeps the value set")
    }
}

/// Maps codes of one `(d, space)` to the code of their space inversion.
#[derive(Debug, Clone)]
pub struct CodeReflector {
    d: usize,
    space: CodeSpace,
    inner: ReflectorKind,
}

#[derive(Debug, Clone)]
enum ReflectorKind {
    Encoded(Encoder),
    Generalized(GeneralizedCodec),
}

impl CodeReflector {
    pub fn new(d: usize, space: CodeSpace) -> Result<Self> {
        let inner = match space {
            CodeSpace::Permutation(scheme) => ReflectorKind::Encoded(Encoder::new(d, scheme)?),
            CodeSpace::Generalized => ReflectorKind::Generalized(GeneralizedCodec::new(d)?),
        };
        Ok(Self { d, space, inner })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> CodeSpace {
        self.space
    }

    /// Reflects a raw code value of this reflector's space.
    pub fn reflect_value(&self, value: u64) -> Result<u64> {
        match &self.inner {
            ReflectorKind::Encoded(enc) => {
                let reflected = enc.decode(value)?.invert_space();
                Ok(enc.encode_counts(reflected.as_slice()))
            }
            ReflectorKind::Generalized(codec) => {
                let reflected = codec.pattern(value)?.invert_space();
                codec.code_of(&reflected)
            }
        }
    }

    pub fn reflect(&self, code: &PatternCode) -> Result<PatternCode> {
        if code.d() != self.d || code.space() != self.space {
            return Err(crate::error::PatternError::MixedConfig);
        }
        Ok(PatternCode::new_unchecked(
            self.d,
            self.space,
            self.reflect_value(code.value())?,
        ))
    }
}

/// Code of the space-inverted pattern, in the same code space.
///
/// For Lehmer codes the two values always add up to `d! - 1`.
pub fn reflect_code(code: &PatternCode) -> Result<PatternCode> {
    CodeReflector::new(code.d(), code.space())?.reflect(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodingScheme;

    fn rank(v: &[usize]) -> RankPattern {
        RankPattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_example() {
        let r = rank(&[4, 2, 1, 5, 3]);
        assert_eq!(r.invert_space().as_slice(), &[2, 4, 5, 1, 3]);
        assert_eq!(r.invert_time().as_slice(), &[3, 5, 1, 2, 4]);
        let p = PermutationPattern::new(vec![3, 2, 5, 1, 4]).unwrap();
        assert_eq!(p.invert_space().as_slice(), &[4, 1, 5, 2, 3]);
        assert_eq!(p.invert_time().as_slice(), &[3, 4, 1, 5, 2]);
    }

    #[test]
    fn inversion_tuples() {
        let zero = InversionPattern::zero(3).unwrap();
        assert_eq!(zero.invert_space().as_slice(), &[2, 1, 0]);
        assert_eq!(zero.invert_time().as_slice(), &[2, 1, 0]);
        let example = rank(&[4, 2, 1, 5, 3]).to_inversion();
        assert_eq!(example.invert_time(), rank(&[3, 5, 1, 2, 4]).to_inversion());
    }

    #[test]
    fn reflect_examples() {
        let lc =
            |d, v| PatternCode::new(d, CodeSpace::Permutation(EncodingScheme::Lehmer), v).unwrap();
        assert_eq!(reflect_code(&lc(3, 0)).unwrap().value(), 5);
        assert_eq!(reflect_code(&lc(3, 2)).unwrap().value(), 3);
        assert_eq!(reflect_code(&lc(2, 0)).unwrap().value(), 1);
    }

    #[test]
    fn kse_reflection_d3() {
        // Table rows: (1,2,3)->0 pairs with (3,2,1)->5, (1,3,2)->3 with (3,1,2)->2,
        // (2,1,3)->1 with (2,3,1)->4.
        let kse = |v| PatternCode::new(3, CodeSpace::Permutation(EncodingScheme::Kse), v).unwrap();
        let expected = [(0, 5), (3, 2), (1, 4)];
        for (a, b) in expected {
            assert_eq!(reflect_code(&kse(a)).unwrap().value(), b);
            assert_eq!(reflect_code(&kse(b)).unwrap().value(), a);
        }
    }

    #[test]
    fn generalized_reflection() {
        let g = GeneralizedRankPattern::new(vec![1, 1, 2]).unwrap();
        assert_eq!(g.invert_space().as_slice(), &[2, 2, 1]);
        assert_eq!(g.invert_time().as_slice(), &[2, 1, 1]);
        let refl = CodeReflector::new(3, CodeSpace::Generalized).unwrap();
        for v in 0..13 {
            assert_eq!(
                refl.reflect_value(refl.reflect_value(v).unwrap()).unwrap(),
                v
            );
        }
        // (1,1,1) is its own reflection and is the first code.
        assert_eq!(refl.reflect_value(0).unwrap(), 0);
    }

    #[test]
    fn mismatched_reflector() {
        let refl = CodeReflector::new(3, CodeSpace::Permutation(EncodingScheme::Lehmer)).unwrap();
        let other = PatternCode::new(4, CodeSpace::Permutation(EncodingScheme::Lehmer), 0).unwrap();
        assert!(refl.reflect(&other).is_err());
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::fmt::Debug;

use num_rational::Ratio;

/// A totally ordered sample value.
///
/// Only finite values take part in ordinal patterns; NaN breaks the total
/// order and infinities are rejected alongside it.
pub trait Scalar: Copy + PartialOrd + Debug + Send + Sync {
    fn is_finite_value(&self) -> bool;
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn is_finite_value(&self) -> bool {
                num_traits::Float::is_finite(*self)
            }
        }
    )*};
}

macro_rules! exact_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn is_finite_value(&self) -> bool {
                true
            }
        }
    )*};
}

float_scalar!(f32, f64);
exact_scalar!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize);
exact_scalar!(Ratio<i32>, Ratio<i64>);

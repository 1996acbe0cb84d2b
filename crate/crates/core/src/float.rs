//! Scalar abstraction: every numerical kernel in this crate is generic over
//! [`Float`], implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Float:
    num_traits::Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Float for f32 {}
impl Float for f64 {}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn cast<T: Float>(x: f64) -> T {
    T::from_f64(x).expect("f64 converts to any Float")
}

/// Converts a count into the working scalar type.
#[inline]
pub(crate) fn from_usize<T: Float>(n: usize) -> T {
    T::from_usize(n).expect("usize converts to any Float")
}

//! Generic floating-point scalar used throughout the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar the solvers and kernels are generic over.
///
/// Implemented for `f32` and `f64`. All tolerance-bearing work should use
/// `f64` (see the `Real` alias at the crate root); the `f32` instantiation
/// exists for memory-bound experimentation.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::FloatConst
    + rustfft::FftNum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Display
    + LowerExp
    + Debug
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const ONE: Self;
    const TWO: Self;

    fn from_real(x: f64) -> Self;
    fn to_real(self) -> f64;

    /// Euler Gamma function, valid for non-pole real arguments
    /// (reflection formula for negative inputs).
    fn gamma(self) -> Self;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const TWO: Self = 2.0;

    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_real(self) -> f64 {
        self
    }
    #[inline]
    fn gamma(self) -> Self {
        statrs::function::gamma::gamma(self)
    }
}

impl Scalar for f32 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const TWO: Self = 2.0;

    #[inline]
    fn from_real(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_real(self) -> f64 {
        self as f64
    }
    #[inline]
    fn gamma(self) -> Self {
        statrs::function::gamma::gamma(self as f64) as f32
    }
}

//! Scalar abstraction: every geometric type in this crate is generic over
//! the coordinate type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating-point coordinate type the engine operates on.
///
/// `EPS` is the absolute tolerance used to classify degenerate configurations
/// inside predicates (collinearity, near-parallel lines). It is never used to
/// move a verdict towards "no collision".
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumCast + Default + Debug + Display + Send + Sync + 'static
{
    /// Absolute degeneracy tolerance.
    const EPS: Self;

    /// Conversion from `f64`, panicking on values the type cannot represent.
    #[inline]
    fn cast(v: f64) -> Self {
        Self::from_f64(v).expect("value not representable in scalar type")
    }

    /// `2.0`, saves a cast in hot formulas.
    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// `0.5`.
    #[inline]
    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Scalar for f32 {
    const EPS: f32 = 1e-5;
}

impl Scalar for f64 {
    const EPS: f64 = 1e-10;
}

//! Floating-point abstraction shared by the numerical core.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// A real floating-point scalar (`f32` or `f64`).
///
/// The quadrature, Airy and spectrum modules are written against this trait;
/// the accuracy targets quoted in their docs refer to `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Machine epsilon for the concrete type.
    const EPS: f64;

    /// `π − π̂` where `π̂` is `π` rounded to `Self`.
    const PI_LO: f64;

    /// Converts an `f64` literal into `Self`, rounding if necessary.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index into `Self`.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EPS: f64 = f32::EPSILON as f64;
    const PI_LO: f64 = -8.742278000372485e-8;
}

impl Scalar for f64 {
    const EPS: f64 = f64::EPSILON;
    const PI_LO: f64 = 1.2246467991473532e-16;
}

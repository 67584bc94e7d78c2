//! Scalar abstraction for the whole crate.
//!
//! All core math is generic over the floating-point type; `f32` and `f64`
//! both work, with `f64` aliases exported at the crate root.

use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar type for states, rates and spectra: `f32` or `f64`.
pub trait Real: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

impl<T> Real for T where T: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

/// Shorthand for lifting an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 literal converts to any Real scalar")
}

//! Scalar abstraction over `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used by every geometric routine in the crate.
///
/// Tolerances live on the trait because the invariants checked here (unit
/// norms, coincident vertices, extremal-edge ties) are only meaningful at a
/// precision the scalar can actually deliver.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Allowed deviation of a unit vector's norm from 1.
    const NORM_TOL: Self;
    /// Geometric tolerance for validation checks, vertex merging and tie grouping.
    const GEOM_TOL: Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (possibly rounded).
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar")
    }

    /// Lossy conversion used at reporting boundaries.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const NORM_TOL: Self = 1e-12;
    const GEOM_TOL: Self = 1e-9;
}

impl Real for f32 {
    const NORM_TOL: Self = 1e-6;
    const GEOM_TOL: Self = 1e-5;
}

/// `pi * num / den`, used for the 30, 36 and 72 degree constants.
#[inline]
pub fn pi_frac<T: Real>(num: u32, den: u32) -> T {
    T::PI() * T::from_count(num as usize) / T::from_count(den as usize)
}

/// `sin 36°`
#[inline]
pub fn sin36<T: Real>() -> T {
    pi_frac::<T>(1, 5).sin()
}

/// `cos 36°`
#[inline]
pub fn cos36<T: Real>() -> T {
    pi_frac::<T>(1, 5).cos()
}

/// `2 sin 36°`, the limit of the edge ratio.
#[inline]
pub fn two_sin36<T: Real>() -> T {
    sin36::<T>() + sin36::<T>()
}

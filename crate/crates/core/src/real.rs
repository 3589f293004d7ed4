//! Scalar abstraction shared by every module.
//!
//! All geometry and entropy code is written against [`Real`], so the same
//! routines run in `f32` or `f64`. Tolerances are written as `f64` literals
//! and widened to a few ULPs of the target type when that type cannot
//! resolve them (see [`tol`]).

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant, panicking only on non-representable input.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Tolerance `x`, but never below 16 machine epsilons of `T`.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    let floor = T::epsilon() * T::lit(16.0);
    T::lit(x).max(floor)
}

/// `1/√2`, the smallest overlap two qubit eigenbases can have.
#[inline]
pub fn min_overlap<T: Real>() -> T {
    T::FRAC_1_SQRT_2()
}

/// Reduces an angle into `[0, period)`.
#[inline]
pub(crate) fn wrap<T: Real>(x: T, period: T) -> T {
    let r = x % period;
    let r = if r < T::zero() { r + period } else { r };
    // `-tiny % p + p` can round to `p` itself
    if r >= period {
        T::zero()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_widens_for_f32() {
        assert_eq!(tol::<f64>(1e-9), 1e-9);
        assert!(tol::<f32>(1e-9) > 1e-6);
    }

    #[test]
    fn wrap_into_period() {
        let two_pi = std::f64::consts::TAU;
        assert_eq!(wrap(0.0, two_pi), 0.0);
        assert!((wrap(-0.5, two_pi) - (two_pi - 0.5)).abs() < 1e-15);
        assert!((wrap(7.0, two_pi) - (7.0 - two_pi)).abs() < 1e-15);
        assert_eq!(wrap(-1e-300, two_pi), 0.0);
    }
}

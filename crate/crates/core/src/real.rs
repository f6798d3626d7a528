//! Floating point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// A binary floating point type usable as the scalar of the estimators.
///
/// Implemented for `f32` and `f64`. Besides the `num-traits` bounds it
/// supplies the complementary error function and a couple of
/// representation constants the underflow policy depends on.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Number of significand bits, including the implicit one.
    const MANTISSA_DIGITS: u32;

    /// Exponents at or below this value make `exp` return zero (or a
    /// denormal with almost no significant bits); such values are flushed
    /// to an exact zero.
    const LN_UNDERFLOW: f64;

    fn erfc(self) -> Self;

    /// Converts an `f64` literal. Panics only for unrepresentable values,
    /// which `f32`/`f64` do not have.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const MANTISSA_DIGITS: u32 = f64::MANTISSA_DIGITS;
    const LN_UNDERFLOW: f64 = -745.0;

    #[inline]
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl Real for f32 {
    const MANTISSA_DIGITS: u32 = f32::MANTISSA_DIGITS;
    const LN_UNDERFLOW: f64 = -104.0;

    #[inline]
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underflow_thresholds_flush_to_zero() {
        assert!((f64::LN_UNDERFLOW).exp() <= f64::MIN_POSITIVE * f64::EPSILON);
        assert_eq!((f32::LN_UNDERFLOW as f32).exp(), 0.0);
        assert!((f64::LN_UNDERFLOW + 1.0).exp() > 0.0);
    }

    #[test]
    fn erfc_matches_known_values() {
        assert!((Real::erfc(0.0f64) - 1.0).abs() < 1e-16);
        assert!((Real::erfc(1.0f64) - 0.157_299_207_050_285_13).abs() < 1e-16);
        assert!((Real::erfc(1.0f32) - 0.157_299_2).abs() < 1e-6);
    }
}

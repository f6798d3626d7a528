//! The boundary bump `eta_p` and its antiderivative.
//!
//! `eta_p(u) = 2^(-p-2) u^(-p-1) exp(2^p - u^(-p))` on `(0, 1/2]`, with
//! `eta_p(0) = 0`. It rises from 0 to `eta_p(1/2) = 1/2` and is flat to all
//! orders at the origin. Its antiderivative has the closed form
//! `F_p(u) = exp(2^p - u^(-p)) / (p 2^(p+2))`.

use crate::error::{Error, Result};
use crate::real::Real;

fn check_args<T: Real>(p: T, u: T) -> Result<()> {
    if !(p >= T::one()) {
        return Err(Error::param("p", format!("must be >= 1, got {p}")));
    }
    if !(u >= T::zero() && u <= T::lit(0.5)) {
        return Err(Error::domain(format!("bump argument {u} outside [0, 1/2]")));
    }
    Ok(())
}

/// The exponent `2^p - u^(-p)`, or `None` once it is past the underflow
/// threshold (including `u == 0`).
#[inline]
fn exponent<T: Real>(p: T, u: T) -> Option<T> {
    if u <= T::zero() {
        return None;
    }
    let e = T::lit(2.0).powf(p) - u.powf(-p);
    (e.to_f64_lossy() > T::LN_UNDERFLOW).then_some(e)
}

#[inline]
pub(crate) fn ln_eta_unchecked<T: Real>(p: T, u: T) -> T {
    match exponent(p, u) {
        Some(e) => e - (p + T::lit(2.0)) * T::LN_2() - (p + T::one()) * u.ln(),
        None => T::neg_infinity(),
    }
}

#[inline]
pub(crate) fn eta_unchecked<T: Real>(p: T, u: T) -> T {
    match exponent(p, u) {
        Some(e) => T::lit(2.0).powf(-p - T::lit(2.0)) * u.powf(-p - T::one()) * e.exp(),
        None => T::zero(),
    }
}

/// `ln F_p(u)`; `-inf` where `F_p` is flushed to zero.
#[inline]
pub(crate) fn ln_eta_integral_unchecked<T: Real>(p: T, u: T) -> T {
    match exponent(p, u) {
        Some(e) => e - p.ln() - (p + T::lit(2.0)) * T::LN_2(),
        None => T::neg_infinity(),
    }
}

#[inline]
pub(crate) fn eta_integral_unchecked<T: Real>(p: T, u: T) -> T {
    match exponent(p, u) {
        Some(e) => e.exp() / (p * T::lit(2.0).powf(p + T::lit(2.0))),
        None => T::zero(),
    }
}

/// Evaluates `eta_p(u)` for `u` in `[0, 1/2]` and `p >= 1`.
pub fn eta<T: Real>(p: T, u: T) -> Result<T> {
    check_args(p, u)?;
    Ok(eta_unchecked(p, u))
}

/// Evaluates `int_0^u eta_p(t) dt` in closed form.
pub fn eta_integral<T: Real>(p: T, u: T) -> Result<T> {
    check_args(p, u)?;
    Ok(eta_integral_unchecked(p, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_reference_values() {
        assert_eq!(eta(1.0, 0.0).unwrap(), 0.0);
        assert!((eta(1.0, 0.5).unwrap() - 0.5f64).abs() < 1e-16);
        let expected = 2.0 * (-2.0f64).exp();
        assert!((eta(1.0, 0.25).unwrap() - expected).abs() < 1e-16);
        for p in [1.0, 1.5, 2.0, 3.0, 7.0] {
            assert!((eta(p, 0.5).unwrap() - 0.5f64).abs() < 1e-15, "p={p}");
        }
    }

    #[test]
    fn eta_integral_reference_values() {
        assert_eq!(eta_integral(1.0, 0.0).unwrap(), 0.0);
        assert!((eta_integral(1.0, 0.5).unwrap() - 0.125f64).abs() < 1e-17);
        assert!((eta_integral(2.0, 0.5).unwrap() - 1.0f64 / 32.0).abs() < 1e-17);
    }

    #[test]
    fn tiny_arguments_flush_to_zero_without_nan() {
        for u in [f64::MIN_POSITIVE, 1e-300, 1e-5, 1.0 / 746.0] {
            let e = eta(1.0, u).unwrap();
            assert!(e.is_finite() && e >= 0.0);
            let f = eta_integral(1.0, u).unwrap();
            assert!(f.is_finite() && f >= 0.0);
        }
        assert_eq!(eta(1.0, 1.0 / 800.0).unwrap(), 0.0);
        assert_eq!(ln_eta_unchecked(1.0, 1.0 / 800.0), f64::NEG_INFINITY);
    }

    #[test]
    fn log_forms_agree_with_direct_forms() {
        for p in [1.0f64, 2.0] {
            for i in 1..=50 {
                let u = 0.01 * i as f64;
                let direct = eta_unchecked(p, u);
                let via_ln = ln_eta_unchecked(p, u).exp();
                assert!((direct - via_ln).abs() <= 1e-12 * direct.max(1e-300));
                let direct = eta_integral_unchecked(p, u);
                let via_ln = ln_eta_integral_unchecked(p, u).exp();
                assert!((direct - via_ln).abs() <= 1e-12 * direct.max(1e-300));
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(eta(0.5, 0.1), Err(Error::InvalidParameter { .. })));
        assert!(matches!(eta(1.0, 0.6), Err(Error::Domain(_))));
        assert!(matches!(eta(1.0, -0.1), Err(Error::Domain(_))));
        assert!(eta_integral(1.0, f64::NAN).is_err());
    }

    #[test]
    fn monotone_on_grid() {
        for p in [1.0f64, 2.0, 4.0] {
            let mut prev = 0.0;
            for i in 0..=1000 {
                let v = eta(p, 0.5 * i as f64 / 1000.0).unwrap();
                assert!(v >= prev);
                prev = v;
            }
        }
    }
}

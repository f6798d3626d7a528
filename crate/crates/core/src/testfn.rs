//! Integrands on `R^s`, including the product test family with a known
//! Gaussian expectation.

use crate::error::{Error, Result};
use crate::real::Real;

/// A deterministic function `f : R^s -> R`.
pub trait Integrand<T: Real>: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[T]) -> T;

    /// `(sign(f), ln|f|)`, used to combine `f` with tiny weights without
    /// overflow. Implementations that can overflow should override it.
    fn eval_signed_ln(&self, x: &[T]) -> (T, T) {
        let v = self.eval(x);
        (v.signum(), v.abs().ln())
    }

    fn label(&self) -> String {
        "f".to_string()
    }
}

/// Wraps a closure as an [`Integrand`].
pub struct FnIntegrand<F> {
    s: usize,
    f: F,
    label: String,
}

impl<F> FnIntegrand<F> {
    pub fn new(s: usize, label: impl Into<String>, f: F) -> Self {
        Self { s, f, label: label.into() }
    }
}

impl<T: Real, F: Fn(&[T]) -> T + Send + Sync> Integrand<T> for FnIntegrand<F> {
    fn dim(&self) -> usize {
        self.s
    }

    fn eval(&self, x: &[T]) -> T {
        (self.f)(x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `f(x) = prod_j (1 + j^(-2) g(x_j))` with
/// `g(x) = sqrt(1 - 2M) exp(M x^2) - 1`.
///
/// `E exp(M X^2) = (1 - 2M)^(-1/2)` for a standard normal `X`, so every `g`
/// has zero Gaussian mean and `E f = 1` for all `s` and `M < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductGaussianTest<T> {
    s: usize,
    m: T,
    // ln sqrt(1 - 2M)
    ln_norm: T,
}

impl<T: Real> ProductGaussianTest<T> {
    pub fn new(s: usize, m: T) -> Result<Self> {
        if s == 0 {
            return Err(Error::param("s", "dimension must be at least 1"));
        }
        if !(m < T::lit(0.5)) || !m.is_finite() {
            return Err(Error::param("M", format!("must be finite and below 0.5, got {m}")));
        }
        let ln_norm = T::lit(0.5) * (T::lit(-2.0) * m).ln_1p();
        Ok(Self { s, m, ln_norm })
    }

    pub fn growth(&self) -> T {
        self.m
    }

    /// `c_j = j^(-2)` for the zero-based dimension `j`.
    #[inline]
    pub fn coefficient(j: usize) -> T {
        let k = T::lit((j + 1) as f64);
        T::one() / (k * k)
    }

    /// Exponent `a` with `1 + g(x) = exp(a)`.
    #[inline]
    fn exponent(&self, x: T) -> T {
        self.m * x * x + self.ln_norm
    }

    #[inline]
    pub fn g(&self, x: T) -> T {
        self.exponent(x).exp_m1()
    }

    /// The exact expectation under the standard Gaussian.
    pub fn exact_mu(&self) -> T {
        T::one()
    }
}

impl<T: Real> Integrand<T> for ProductGaussianTest<T> {
    fn dim(&self) -> usize {
        self.s
    }

    fn eval(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.s);
        if self.m == T::zero() {
            return T::one();
        }
        x.iter()
            .enumerate()
            .fold(T::one(), |acc, (j, &xj)| acc * (T::one() + Self::coefficient(j) * self.g(xj)))
    }

    fn eval_signed_ln(&self, x: &[T]) -> (T, T) {
        debug_assert_eq!(x.len(), self.s);
        if self.m == T::zero() {
            return (T::one(), T::zero());
        }
        let ln = x.iter().enumerate().fold(T::zero(), |acc, (j, &xj)| {
            let c = Self::coefficient(j);
            let a = self.exponent(xj);
            // 1 + c (e^a - 1) = c e^a (1 + (1 - c) e^-a / c); every factor is positive.
            let term = if a > T::lit(30.0) {
                c.ln() + a + ((T::one() - c) * (-a).exp() / c).ln_1p()
            } else {
                (c * a.exp_m1()).ln_1p()
            };
            acc + term
        });
        (T::one(), ln)
    }

    fn label(&self) -> String {
        format!("product-gaussian(M={})", self.m)
    }
}

pub fn test_eval<T: Real>(t: &ProductGaussianTest<T>, x: &[T]) -> T {
    t.eval(x)
}

pub fn exact_mu<T: Real>(t: &ProductGaussianTest<T>) -> T {
    t.exact_mu()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let flat = ProductGaussianTest::new(4, 0.0f64).unwrap();
        assert_eq!(flat.eval(&[1.0, -3.0, 20.0, 1e10]), 1.0);

        let t = ProductGaussianTest::new(1, 0.3f64).unwrap();
        assert!((t.eval(&[0.0]) - 0.4f64.sqrt()).abs() < 1e-15);
        assert!((t.eval(&[0.0]) - 0.632_455_532_033_675_9).abs() < 1e-15);
        // g(1) = sqrt(0.4) e^0.3 - 1
        assert!((t.eval(&[1.0]) - 0.4f64.sqrt() * 0.3f64.exp()).abs() < 1e-15);

        let t = ProductGaussianTest::new(2, 0.25f64).unwrap();
        let h = 0.5f64.sqrt();
        let expected = h * (1.0 + (h - 1.0) / 4.0);
        assert!((t.eval(&[0.0, 0.0]) - expected).abs() < 1e-15);
        assert!((expected - 0.655_330).abs() < 1e-6);
    }

    #[test]
    fn exact_mu_is_one() {
        for (s, m) in [(5, 0.0), (30, 0.3), (128, 0.25)] {
            assert_eq!(ProductGaussianTest::new(s, m).unwrap().exact_mu(), 1.0f64);
        }
    }

    #[test]
    fn rejects_non_integrable_growth() {
        assert!(ProductGaussianTest::new(3, 0.5f64).is_err());
        assert!(ProductGaussianTest::new(3, f64::NAN).is_err());
        assert!(ProductGaussianTest::new(0, 0.1f64).is_err());
    }

    #[test]
    fn overflow_propagates_as_infinity() {
        let t = ProductGaussianTest::new(2, 0.3f64).unwrap();
        assert_eq!(t.eval(&[40.0, 40.0]), f64::INFINITY);
        let (sign, ln) = t.eval_signed_ln(&[40.0, 40.0]);
        assert_eq!(sign, 1.0);
        assert!(ln.is_finite() && ln > 900.0);
    }

    #[test]
    fn signed_log_matches_direct_product() {
        let t = ProductGaussianTest::new(3, 0.3f64).unwrap();
        for x in [[0.0, 0.0, 0.0], [1.0, -2.0, 3.0], [6.0, 0.5, -7.0], [9.5, 1.0, 2.0]] {
            let direct = t.eval(&x);
            let (sign, ln) = t.eval_signed_ln(&x);
            assert!((sign * ln.exp() - direct).abs() <= 1e-13 * direct.abs());
        }
    }

    #[test]
    fn negative_growth_is_allowed() {
        let t = ProductGaussianTest::new(2, -0.5f64).unwrap();
        let v = t.eval(&[3.0, -1.0]);
        assert!(v > 0.0 && v.is_finite());
    }
}

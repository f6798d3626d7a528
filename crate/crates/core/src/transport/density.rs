//! Reference densities on the real line.

use crate::real::Real;

/// A strictly positive, bounded, symmetric, light-tailed density together
/// with its distribution function and quantile.
///
/// `quantile` returns `-inf` at 0, `+inf` at 1 and NaN outside `[0, 1]`.
pub trait DensityKernel<T: Real>: Send + Sync {
    fn density(&self, x: T) -> T;

    fn ln_density(&self, x: T) -> T {
        self.density(x).ln()
    }

    fn cdf(&self, x: T) -> T;

    fn quantile(&self, p: T) -> T;

    /// Lower-tail quantile from a log-probability. Kernels whose tails are
    /// reachable below the smallest positive float should override this.
    fn quantile_ln_lower(&self, ln_p: T) -> T {
        self.quantile(ln_p.exp())
    }
}

/// The standard normal density `exp(-x^2/2)/sqrt(2 pi)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Gaussian;

// Acklam's rational approximation, relative error about 1.15e-9.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.02425;

fn horner<T: Real>(coeffs: &[f64], x: T) -> T {
    coeffs
        .iter()
        .fold(T::zero(), |acc, &c| acc * x + T::lit(c))
}

impl Gaussian {
    /// Initial guess for `p` in `(0, 1/2]`.
    fn acklam_lower<T: Real>(q: T) -> T {
        if q < T::lit(P_LOW) {
            let r = (T::lit(-2.0) * q.ln()).sqrt();
            horner(&C, r) / (horner(&D, r) * r + T::one())
        } else {
            let r = q - T::lit(0.5);
            let r2 = r * r;
            horner(&A, r2) * r / (horner(&B, r2) * r2 + T::one())
        }
    }

    fn lower_quantile<T: Real>(q: T) -> T {
        // exp(x^2/2) in the Halley step overflows deep in the tail.
        let ln_max = T::max_value().ln();
        let ln_q = q.ln();
        if ln_q < -ln_max + T::lit(10.0) {
            return Self::newton_ln_lower(ln_q);
        }
        let x = Self::acklam_lower(q);
        let e = Self::cdf_impl(x) - q;
        let u = e * T::TAU().sqrt() * (x * x * T::lit(0.5)).exp();
        x - u / (T::one() + x * u * T::lit(0.5))
    }

    fn cdf_impl<T: Real>(x: T) -> T {
        T::lit(0.5) * (-x * T::FRAC_1_SQRT_2()).erfc()
    }

    fn ln_pdf<T: Real>(x: T) -> T {
        -x * x * T::lit(0.5) - T::lit(0.5) * T::TAU().ln()
    }

    /// `ln Phi(x)`, accurate far below the underflow of `Phi` itself.
    pub fn ln_cdf<T: Real>(x: T) -> T {
        let phi = Self::cdf_impl(x);
        if phi > T::min_positive_value() * T::lit(1024.0) {
            return phi.ln();
        }
        // Mills-ratio asymptotic series, x << 0.
        let z = T::one() / (x * x);
        let mut term = T::one();
        let mut sum = T::one();
        for k in 1..12 {
            term = term * -z * T::lit((2 * k - 1) as f64);
            sum = sum + term;
        }
        Self::ln_pdf(x) - (-x).ln() + sum.ln()
    }

    fn newton_ln_lower<T: Real>(ln_p: T) -> T {
        if ln_p == T::neg_infinity() {
            return T::neg_infinity();
        }
        let mut x = -(T::lit(-2.0) * ln_p).sqrt();
        for _ in 0..100 {
            let lc = Self::ln_cdf(x);
            let slope = (Self::ln_pdf(x) - lc).exp();
            let step = (lc - ln_p) / slope;
            x = x - step;
            if step.abs() <= T::epsilon() * T::lit(4.0) * x.abs() {
                break;
            }
        }
        x
    }
}

impl<T: Real> DensityKernel<T> for Gaussian {
    #[inline]
    fn density(&self, x: T) -> T {
        (-x * x * T::lit(0.5)).exp() / T::TAU().sqrt()
    }

    #[inline]
    fn ln_density(&self, x: T) -> T {
        Self::ln_pdf(x)
    }

    #[inline]
    fn cdf(&self, x: T) -> T {
        Self::cdf_impl(x)
    }

    fn quantile(&self, p: T) -> T {
        let half = T::lit(0.5);
        if p.is_nan() || p < T::zero() || p > T::one() {
            T::nan()
        } else if p == T::zero() {
            T::neg_infinity()
        } else if p == T::one() {
            T::infinity()
        } else if p == half {
            T::zero()
        } else if p < half {
            Self::lower_quantile(p)
        } else {
            // 1 - p is exact for p >= 1/2.
            -Self::lower_quantile(T::one() - p)
        }
    }

    fn quantile_ln_lower(&self, ln_p: T) -> T {
        if ln_p >= T::lit(0.5).ln() {
            return self.quantile(ln_p.exp());
        }
        let ln_max = T::max_value().ln();
        if ln_p < -ln_max + T::lit(10.0) {
            Self::newton_ln_lower(ln_p)
        } else {
            Self::lower_quantile(ln_p.exp())
        }
    }
}

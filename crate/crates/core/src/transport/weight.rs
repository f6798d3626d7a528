//! The boundary-damping weight family `w_theta` and its cumulative.

use super::bump::{eta_integral_unchecked, eta_unchecked, ln_eta_integral_unchecked, ln_eta_unchecked};
use crate::error::{Error, Result};
use crate::real::Real;

/// Per-dimension damping widths `theta_j` in `(0, 1/2]` and the bump
/// exponent `p >= 1`.
///
/// Dimension indices are zero based: `theta(0)` is the width of the first
/// coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct DampingParams<T> {
    theta: Vec<T>,
    p: T,
}

impl<T: Real> DampingParams<T> {
    pub fn new(theta: Vec<T>, p: T) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::param("p", format!("must be >= 1, got {p}")));
        }
        for (j, &t) in theta.iter().enumerate() {
            if !(t > T::zero() && t <= T::lit(0.5)) {
                return Err(Error::param(
                    "theta",
                    format!("theta[{j}] = {t} outside (0, 1/2]"),
                ));
            }
        }
        Ok(Self { theta, p })
    }

    /// `theta_j = theta0` for every dimension.
    pub fn constant(s: usize, theta0: T, p: T) -> Result<Self> {
        Self::new(vec![theta0; s], p)
    }

    /// `theta_j = theta0 * j^(-exponent)` with `j = 1..=s`.
    pub fn power_schedule(s: usize, theta0: T, exponent: T, p: T) -> Result<Self> {
        let theta = (1..=s)
            .map(|j| theta0 * T::lit(j as f64).powf(-exponent))
            .collect();
        Self::new(theta, p)
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self, j: usize) -> T {
        self.theta[j]
    }

    pub fn thetas(&self) -> &[T] {
        &self.theta
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn weight(&self, j: usize, u: T) -> T {
        damping_weight(self.theta[j], self.p, u)
    }

    pub fn ln_weight(&self, j: usize, u: T) -> T {
        ln_damping_weight(self.theta[j], self.p, u)
    }

    pub fn cumulative(&self, j: usize, u: T) -> T {
        damping_cumulative(self.theta[j], self.p, u)
    }
}

#[inline]
fn plateau<T: Real>(theta: T) -> T {
    T::one() / (T::one() - theta)
}

/// Folds `u` onto `[0, 1/2]`; `1 - u` is exact for `u >= 1/2`.
#[inline]
fn fold<T: Real>(u: T) -> T {
    if u > T::lit(0.5) {
        T::one() - u
    } else {
        u
    }
}

/// `w_theta(u)` for a single width. Zero at (and outside) the endpoints.
#[inline]
pub fn damping_weight<T: Real>(theta: T, p: T, u: T) -> T {
    if !(u > T::zero() && u < T::one()) {
        return T::zero();
    }
    let v = fold(u);
    let c = plateau(theta);
    let half_theta = theta * T::lit(0.5);
    if v <= half_theta {
        c * eta_unchecked(p, v / theta)
    } else if v < theta {
        c * (T::one() - eta_unchecked(p, T::one() - v / theta))
    } else {
        c
    }
}

/// `ln w_theta(u)`, `-inf` wherever `damping_weight` returns zero.
#[inline]
pub fn ln_damping_weight<T: Real>(theta: T, p: T, u: T) -> T {
    if !(u > T::zero() && u < T::one()) {
        return T::neg_infinity();
    }
    let v = fold(u);
    let ln_c = -(-theta).ln_1p();
    if v <= theta * T::lit(0.5) {
        ln_c + ln_eta_unchecked(p, v / theta)
    } else if v < theta {
        ln_c + (-eta_unchecked(p, T::one() - v / theta)).ln_1p()
    } else {
        ln_c
    }
}

/// `W(v) = int_0^v w_theta` for `v` in `[0, 1/2]`.
#[inline]
fn cumulative_lower<T: Real>(theta: T, p: T, v: T) -> T {
    if v <= T::zero() {
        return T::zero();
    }
    let c = plateau(theta);
    let half_theta = theta * T::lit(0.5);
    if v <= half_theta {
        c * theta * eta_integral_unchecked(p, v / theta)
    } else if v < theta {
        c * ((v - half_theta) + theta * eta_integral_unchecked(p, T::one() - v / theta))
    } else {
        c * (v - half_theta)
    }
}

/// `ln W(v)` on the first branch (`v <= theta/2`), where `W` can underflow.
#[inline]
pub(crate) fn ln_cumulative_first_branch<T: Real>(theta: T, p: T, v: T) -> T {
    -(-theta).ln_1p() + theta.ln() + ln_eta_integral_unchecked(p, v / theta)
}

/// `W(u) = int_0^u w_theta(t) dt` in closed form, clamped to `[0, 1]`
/// outside the unit interval.
#[inline]
pub fn damping_cumulative<T: Real>(theta: T, p: T, u: T) -> T {
    if u <= T::zero() {
        T::zero()
    } else if u >= T::one() {
        T::one()
    } else if u > T::lit(0.5) {
        T::one() - cumulative_lower(theta, p, T::one() - u)
    } else {
        cumulative_lower(theta, p, u)
    }
}

/// Mass of `w_theta` on `[lo, hi]`, computed from the lower half by symmetry
/// so that cells near 1 keep full relative precision.
pub fn damping_mass<T: Real>(theta: T, p: T, lo: T, hi: T) -> T {
    let half = T::lit(0.5);
    if hi <= half {
        cumulative_lower(theta, p, hi) - cumulative_lower(theta, p, lo)
    } else if lo >= half {
        cumulative_lower(theta, p, T::one() - lo) - cumulative_lower(theta, p, T::one() - hi)
    } else {
        damping_mass(theta, p, lo, half) + damping_mass(theta, p, half, hi)
    }
}

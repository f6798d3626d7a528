//! Per-coordinate transport maps `T_j : (0,1) -> R` and their weights
//! `w_j(u) = T_j'(u) density(T_j(u))`.

use super::density::{DensityKernel, Gaussian};
use super::weight::{damping_cumulative, ln_cumulative_first_branch, DampingParams};
use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind<T> {
    /// `T_j = quantile(W_j)` with `W_j` the cumulative of `w_theta_j`.
    BoundaryDamping(DampingParams<T>),
    /// `T_j = quantile`, weight identically one.
    Inversion,
    /// `T_j(u) = -cot(pi u)`, the Cauchy quantile.
    Mobius,
    /// `T_j(u) = a (2u - 1)`, uniform on `[-a, a]`.
    Truncation { a: T },
}

/// A product transport map paired with the reference density it targets.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportMap<T, D = Gaussian> {
    kind: MapKind<T>,
    density: D,
}

impl<T: Real> TransportMap<T, Gaussian> {
    pub fn boundary_damping(params: DampingParams<T>) -> Self {
        Self::with_density(MapKind::BoundaryDamping(params), Gaussian)
    }

    pub fn inversion() -> Self {
        Self::with_density(MapKind::Inversion, Gaussian)
    }

    pub fn mobius() -> Self {
        Self::with_density(MapKind::Mobius, Gaussian)
    }

    pub fn truncation(a: T) -> Result<Self> {
        if !(a > T::zero() && a.is_finite()) {
            return Err(Error::param("a", format!("truncation half-width must be positive, got {a}")));
        }
        Ok(Self::with_density(MapKind::Truncation { a }, Gaussian))
    }
}

impl<T: Real, D: DensityKernel<T>> TransportMap<T, D> {
    pub fn with_density(kind: MapKind<T>, density: D) -> Self {
        Self { kind, density }
    }

    pub fn kind(&self) -> &MapKind<T> {
        &self.kind
    }

    pub fn density(&self) -> &D {
        &self.density
    }

    /// Number of dimensions the map is tied to, if any.
    pub fn dim(&self) -> Option<usize> {
        match &self.kind {
            MapKind::BoundaryDamping(params) => Some(params.dim()),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.kind, MapKind::Truncation { .. })
    }

    /// `T_j(u)`. Unbounded maps reject `u` outside the open unit interval.
    pub fn eval(&self, j: usize, u: T) -> Result<T> {
        let interior = u > T::zero() && u < T::one();
        if self.is_bounded() {
            if !(u >= T::zero() && u <= T::one()) {
                return Err(Error::domain(format!("transport argument {u} outside [0, 1]")));
            }
        } else if !interior {
            return Err(Error::domain(format!(
                "transport argument {u} not in the open unit interval"
            )));
        }
        Ok(self.eval_unchecked(j, u))
    }

    /// `T_j(u)` without the domain check.
    #[inline]
    pub fn eval_unchecked(&self, j: usize, u: T) -> T {
        let half = T::lit(0.5);
        match &self.kind {
            MapKind::BoundaryDamping(params) => {
                if u <= half {
                    self.damping_lower(params, j, u)
                } else {
                    -self.damping_lower(params, j, T::one() - u)
                }
            }
            MapKind::Inversion => self.density.quantile(u),
            MapKind::Mobius => {
                if u <= half {
                    -cot_pi(u)
                } else {
                    cot_pi(T::one() - u)
                }
            }
            MapKind::Truncation { a } => *a * (u + u - T::one()),
        }
    }

    /// `T_j(v)` for `v <= 1/2`.
    #[inline]
    fn damping_lower(&self, params: &DampingParams<T>, j: usize, v: T) -> T {
        let theta = params.theta(j);
        let p = params.p();
        if v <= theta * T::lit(0.5) {
            // The cumulative underflows long before the weight does.
            return self
                .density
                .quantile_ln_lower(ln_cumulative_first_branch(theta, p, v));
        }
        self.density.quantile(damping_cumulative(theta, p, v))
    }

    /// `w_j(u)`, with the limit value at the endpoints.
    #[inline]
    pub fn weight(&self, j: usize, u: T) -> T {
        match &self.kind {
            MapKind::BoundaryDamping(params) => params.weight(j, u),
            MapKind::Inversion => T::one(),
            MapKind::Mobius => {
                if !(u > T::zero() && u < T::one()) {
                    return T::zero();
                }
                let c = mobius_abs_cot(u);
                T::PI() * (T::one() + c * c) * self.density.density(c)
            }
            MapKind::Truncation { a } => {
                let x = *a * (u + u - T::one());
                (*a + *a) * self.density.density(x)
            }
        }
    }

    /// `ln w_j(u)`; `-inf` exactly where `weight` is zero by convention.
    #[inline]
    pub fn ln_weight(&self, j: usize, u: T) -> T {
        match &self.kind {
            MapKind::BoundaryDamping(params) => params.ln_weight(j, u),
            MapKind::Inversion => T::zero(),
            MapKind::Mobius => {
                if !(u > T::zero() && u < T::one()) {
                    return T::neg_infinity();
                }
                let c = mobius_abs_cot(u);
                T::PI().ln() + (c * c).ln_1p() + self.density.ln_density(c)
            }
            MapKind::Truncation { a } => {
                let x = *a * (u + u - T::one());
                (*a + *a).ln() + self.density.ln_density(x)
            }
        }
    }
}

/// `cot(pi v)` for `v` in `(0, 1/2]`.
#[inline]
fn cot_pi<T: Real>(v: T) -> T {
    let (s, c) = (T::PI() * v).sin_cos();
    c / s
}

/// `|cot(pi u)|` evaluated on the folded argument.
#[inline]
fn mobius_abs_cot<T: Real>(u: T) -> T {
    let v = if u > T::lit(0.5) { T::one() - u } else { u };
    cot_pi(v)
}

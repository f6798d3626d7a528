//! Reference density, the damping weight family and the transport maps.

mod bump;
mod density;
mod map;
mod weight;

pub use bump::{eta, eta_integral};
pub use density::{DensityKernel, Gaussian};
pub use map::{MapKind, TransportMap};
pub use weight::{damping_cumulative, damping_mass, damping_weight, ln_damping_weight, DampingParams};

use crate::error::Result;
use crate::real::Real;

/// `w_theta(u)` for dimension `j` of `params`.
pub fn weight_theta<T: Real>(params: &DampingParams<T>, j: usize, u: T) -> T {
    params.weight(j, u)
}

/// `W(u) = int_0^u w_theta` for dimension `j` of `params`.
pub fn weight_theta_cumulative<T: Real>(params: &DampingParams<T>, j: usize, u: T) -> T {
    params.cumulative(j, u)
}

pub fn transport_eval<T: Real, D: DensityKernel<T>>(map: &TransportMap<T, D>, j: usize, u: T) -> Result<T> {
    map.eval(j, u)
}

pub fn transport_weight<T: Real, D: DensityKernel<T>>(map: &TransportMap<T, D>, j: usize, u: T) -> T {
    map.weight(j, u)
}

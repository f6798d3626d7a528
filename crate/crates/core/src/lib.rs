//! Quasi-Monte Carlo integration against the Gaussian measure on `R^s` with
//! boundary-damping importance sampling.
//!
//! An integral `mu = int f(x) prod phi(x_j) dx` is mapped to the unit cube by
//! a per-coordinate transport `T_j`, weighted by `w_j(u) = phi(T_j(u)) T_j'(u)`,
//! and averaged over a randomly scrambled Sobol' net.
//!
//! ```
//! use bdqmc::digitalnet::{DigitalNet, DirectionNumbers};
//! use bdqmc::{estimator, DampingParams64, ProductGaussianTest64, TransportMap64};
//!
//! let params = DampingParams64::constant(3, 0.1, 1.0).unwrap();
//! let map = TransportMap64::boundary_damping(params);
//! let f = ProductGaussianTest64::new(3, 0.25).unwrap();
//! let net = DigitalNet::sobol(DirectionNumbers::joe_kuo(), 3, 8).unwrap();
//! let run = estimator::estimate_rmse(&map, &f, 1.0, &net, 4, 7).unwrap();
//! assert!((run.mean - 1.0).abs() < 0.1);
//! ```

pub mod digitalnet;
pub mod error;
pub mod estimator;
pub mod real;
pub mod sum;
pub mod testfn;
pub mod transport;
pub mod walsh;

pub use error::{Error, Result};
pub use real::Real;

pub type DampingParams64 = transport::DampingParams<f64>;
pub type DampingParams32 = transport::DampingParams<f32>;
pub type TransportMap64 = transport::TransportMap<f64>;
pub type TransportMap32 = transport::TransportMap<f32>;
pub type ProductGaussianTest64 = testfn::ProductGaussianTest<f64>;
pub type ProductGaussianTest32 = testfn::ProductGaussianTest<f32>;
pub type RunResult64 = estimator::RunResult<f64>;
pub type RunResult32 = estimator::RunResult<f32>;

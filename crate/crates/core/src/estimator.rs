//! The weighted estimator `mu_hat = (1/n) sum_i w(u_i) f(T(u_i))` and its
//! replicate RMSE over independent scrambles.

use rayon::prelude::*;

use crate::digitalnet::{unit_from_digits, DigitalNet, ScrambleRealization};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::sum::CompensatedSum;
use crate::testfn::Integrand;
use crate::transport::{DensityKernel, MapKind, TransportMap};

/// Evaluates `f^w(u) = w(u) f(T(u))` with a reusable buffer for `T(u)`.
struct FwEvaluator<'a, T, D, F: ?Sized> {
    map: &'a TransportMap<T, D>,
    f: &'a F,
    x: Vec<T>,
}

impl<'a, T: Real, D: DensityKernel<T>, F: Integrand<T> + ?Sized> FwEvaluator<'a, T, D, F> {
    fn new(map: &'a TransportMap<T, D>, f: &'a F) -> Self {
        Self { map, f, x: vec![T::zero(); f.dim()] }
    }

    #[inline]
    fn eval(&mut self, u: &[T]) -> T {
        // The weight product is accumulated in log space; for large s it
        // underflows long before any single factor does.
        let mut ln_w = T::zero();
        for (j, &uj) in u.iter().enumerate() {
            ln_w = ln_w + self.map.ln_weight(j, uj);
        }
        if ln_w == T::neg_infinity() {
            return T::zero();
        }
        for ((xj, &uj), j) in self.x.iter_mut().zip(u).zip(0..) {
            *xj = self.map.eval_unchecked(j, uj);
        }
        let (sign, ln_f) = self.f.eval_signed_ln(&self.x);
        sign * (ln_w + ln_f).exp()
    }
}

/// `f^w(u)` at a single point. Returns 0 without touching `f` or `T` when
/// any weight factor vanishes; non-finite values of `f` come back
/// non-finite.
pub fn fw_eval<T, D, F>(map: &TransportMap<T, D>, f: &F, u: &[T]) -> T
where
    T: Real,
    D: DensityKernel<T>,
    F: Integrand<T> + ?Sized,
{
    assert_eq!(u.len(), f.dim(), "point and integrand dimensions differ");
    FwEvaluator::new(map, f).eval(u)
}

/// A single-net estimate and the number of non-finite samples seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub failures: usize,
}

/// Mean of `f^w` over an explicit list of points.
pub fn estimate_once<T, D, F, P>(map: &TransportMap<T, D>, f: &F, points: &[P]) -> Estimate<T>
where
    T: Real,
    D: DensityKernel<T>,
    F: Integrand<T> + ?Sized,
    P: AsRef<[T]>,
{
    let mut eval = FwEvaluator::new(map, f);
    let mut sum = CompensatedSum::new();
    let mut failures = 0;
    for p in points {
        let v = eval.eval(p.as_ref());
        failures += usize::from(!v.is_finite());
        sum.add(v);
    }
    Estimate {
        value: sum.value() / T::lit(points.len() as f64),
        failures,
    }
}

/// Mean of `f^w` over every point of `net`, streamed in index order.
pub fn estimate_net<T, D, F>(map: &TransportMap<T, D>, f: &F, net: &DigitalNet) -> Estimate<T>
where
    T: Real,
    D: DensityKernel<T>,
    F: Integrand<T> + ?Sized,
{
    assert_eq!(net.dim(), f.dim(), "net and integrand dimensions differ");
    let mut eval = FwEvaluator::new(map, f);
    let mut u = vec![T::zero(); net.dim()];
    let mut sum = CompensatedSum::new();
    let mut failures = 0;
    net.for_each_point(|_, digits| {
        for (uj, &d) in u.iter_mut().zip(digits) {
            *uj = unit_from_digits(d);
        }
        let v = eval.eval(&u);
        failures += usize::from(!v.is_finite());
        sum.add(v);
    });
    Estimate {
        value: sum.value() / T::lit(net.len() as f64),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetadata {
    pub map: String,
    pub integrand: String,
    pub s: usize,
    pub m: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T> {
    /// Per-replicate estimates, in replicate order.
    pub estimates: Vec<T>,
    pub mean: T,
    /// Root mean squared error against the supplied exact value.
    pub rmse: T,
    pub n: usize,
    pub replicates: usize,
    pub failures: usize,
    pub metadata: RunMetadata,
}

impl<T: Real> RunResult<T> {
    /// Sample standard deviation of the replicate estimates.
    pub fn std_dev(&self) -> T {
        let r = T::lit(self.estimates.len() as f64);
        let ss: CompensatedSum<T> = self.estimates.iter().map(|&e| (e - self.mean) * (e - self.mean)).collect();
        (ss.value() / (r - T::one())).sqrt()
    }
}

pub fn map_label<T: Real, D: DensityKernel<T>>(map: &TransportMap<T, D>) -> String {
    match map.kind() {
        MapKind::BoundaryDamping(params) => format!("boundary-damping(p={})", params.p()),
        MapKind::Inversion => "inversion".to_string(),
        MapKind::Mobius => "mobius".to_string(),
        MapKind::Truncation { a } => format!("truncation(a={a})"),
    }
}

/// Runs `replicates` independently scrambled copies of the Sobol' net
/// `base` and reports the RMSE against `exact_mu`.
///
/// Replicate `r` uses `ScrambleRealization::new(seed, r, s)`. Replicates
/// run in parallel and are reduced in index order, so the result does not
/// depend on the thread count.
pub fn estimate_rmse<T, D, F>(
    map: &TransportMap<T, D>,
    f: &F,
    exact_mu: T,
    base: &DigitalNet,
    replicates: usize,
    seed: u64,
) -> Result<RunResult<T>>
where
    T: Real,
    D: DensityKernel<T>,
    F: Integrand<T> + ?Sized,
{
    if replicates < 2 {
        return Err(Error::param("replicates", format!("need at least 2, got {replicates}")));
    }
    if base.dim() != f.dim() {
        return Err(Error::param(
            "s",
            format!("net has {} dimensions, integrand {}", base.dim(), f.dim()),
        ));
    }
    if let Some(d) = map.dim() {
        if d < f.dim() {
            return Err(Error::param("s", format!("map covers {d} dimensions, integrand needs {}", f.dim())));
        }
    }
    let runs: Vec<Estimate<T>> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| {
            let scrambled = ScrambleRealization::new(seed, r, base.dim()).scramble_net(base);
            estimate_net(map, f, &scrambled)
        })
        .collect();

    let r = T::lit(replicates as f64);
    let estimates: Vec<T> = runs.iter().map(|e| e.value).collect();
    let failures = runs.iter().map(|e| e.failures).sum();
    let mean = estimates.iter().copied().collect::<CompensatedSum<T>>().value() / r;
    let sq: CompensatedSum<T> = estimates.iter().map(|&e| (e - exact_mu) * (e - exact_mu)).collect();
    let rmse = (sq.value() / r).sqrt();
    Ok(RunResult {
        estimates,
        mean,
        rmse,
        n: base.len(),
        replicates,
        failures,
        metadata: RunMetadata {
            map: map_label(map),
            integrand: f.label(),
            s: base.dim(),
            m: base.resolution(),
            seed,
        },
    })
}

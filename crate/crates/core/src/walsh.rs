//! Base-2 Walsh analysis of the damping weight.
//!
//! `wal_k(u) = (-1)^(sum_i k_i u_i)` where `k_i` is bit `i-1` of `k` and
//! `u_i` the `i`-th binary digit of `u`. A Walsh function of resolution `r`
//! is constant on the dyadic cells of width `2^-r`, so coefficients of
//! `w_theta` are exact finite sums of cell masses of the closed-form
//! cumulative.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::transport::{damping_mass, DampingParams};

/// Largest resolution for which coefficients are computed.
pub const MAX_RESOLUTION: u32 = 24;

/// A Walsh index with its resolution `r` (bit length of `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalshIndex(u64);

impl WalshIndex {
    pub fn new(k: u64) -> Self {
        Self(k)
    }

    pub fn k(self) -> u64 {
        self.0
    }

    /// `r` with `2^(r-1) <= k < 2^r`, and `r = 0` for `k = 0`.
    pub fn resolution(self) -> u32 {
        u64::BITS - self.0.leading_zeros()
    }

    /// `N(k) = 2^(r-1)`, the leading power of two.
    pub fn leading(self) -> WalshIndex {
        match self.resolution() {
            0 => self,
            r => WalshIndex(1 << (r - 1)),
        }
    }

    /// `M(k) = k - 2^(r-1)`.
    pub fn remainder(self) -> WalshIndex {
        WalshIndex(self.0 - self.leading().0)
    }
}

impl From<u64> for WalshIndex {
    fn from(k: u64) -> Self {
        Self(k)
    }
}

/// Reverses the low `bits` bits of `a`.
#[inline]
fn reverse_bits(a: u64, bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        a.reverse_bits() >> (64 - bits)
    }
}

/// `wal_k` on the dyadic cell `[a 2^-r, (a+1) 2^-r)`, `r` the resolution of `k`.
#[inline]
fn walsh_on_cell(k: u64, a: u64, r: u32) -> i32 {
    // Digit i of u is bit r-i of a, paired with bit i-1 of k.
    if (k & reverse_bits(a, r)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `wal_k(u)` for `u` in `[0, 1)`.
pub fn walsh<T: Real>(k: WalshIndex, u: T) -> i32 {
    let r = k.resolution();
    if r == 0 {
        return 1;
    }
    let a = (u * T::lit((r as f64).exp2())).floor().to_u64().unwrap_or(0);
    walsh_on_cell(k.0, a, r)
}

/// `int_0^u wal_k(t) dt`, exact.
pub fn walsh_integral<T: Real>(k: WalshIndex, u: T) -> T {
    let r = k.resolution();
    if r == 0 {
        return u;
    }
    let scale = T::lit((r as f64).exp2());
    let cell = (u * scale).floor();
    let a = cell.to_u64().unwrap_or(0);
    let width = T::one() / scale;
    let mut acc = 0i64;
    for b in 0..a {
        acc += i64::from(walsh_on_cell(k.0, b, r));
    }
    T::lit(acc as f64) * width + T::lit(f64::from(walsh_on_cell(k.0, a, r))) * (u - cell * width)
}

/// `sup_u |int_0^u wal_k|`. The antiderivative is piecewise linear with
/// breakpoints at the cell edges, so the supremum is attained at one of
/// them.
pub fn sup_walsh_integral(k: WalshIndex) -> Result<f64> {
    let r = k.resolution();
    if r > MAX_RESOLUTION {
        return Err(Error::Capacity(format!("Walsh resolution {r} above {MAX_RESOLUTION}")));
    }
    if r == 0 {
        return Ok(1.0);
    }
    let mut partial = 0i64;
    let mut best = 0i64;
    for a in 0..1u64 << r {
        partial += i64::from(walsh_on_cell(k.0, a, r));
        best = best.max(partial.abs());
    }
    Ok(best as f64 * (-(r as f64)).exp2())
}

/// Exact Walsh coefficient `int_0^1 w_theta(u) wal_k(u) du` of dimension `j`.
pub fn walsh_coeff_w<T: Real>(params: &DampingParams<T>, j: usize, k: WalshIndex) -> Result<T> {
    let r = k.resolution();
    if r > MAX_RESOLUTION {
        return Err(Error::Capacity(format!("Walsh resolution {r} above {MAX_RESOLUTION}")));
    }
    let theta = params.theta(j);
    let p = params.p();
    let cells = 1u64 << r;
    let width = T::lit((-(r as f64)).exp2());
    let mut plus = crate::sum::CompensatedSum::new();
    for a in 0..cells {
        let lo = T::lit(a as f64) * width;
        let mass = damping_mass(theta, p, lo, lo + width);
        if walsh_on_cell(k.0, a, r) > 0 {
            plus.add(mass);
        } else {
            plus.add(-mass);
        }
    }
    Ok(plus.value())
}

/// In-place fast Walsh–Hadamard transform (natural/Hadamard order).
fn fwht<T: Real>(v: &mut [T]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (v[i], v[i + h]);
                v[i] = x + y;
                v[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// All coefficients `w_hat(k)` for `k < 2^resolution` at once, through a
/// fast Walsh–Hadamard transform of the cell masses.
pub fn walsh_spectrum<T: Real>(params: &DampingParams<T>, j: usize, resolution: u32) -> Result<Vec<T>> {
    if resolution > MAX_RESOLUTION {
        return Err(Error::Capacity(format!("Walsh resolution {resolution} above {MAX_RESOLUTION}")));
    }
    let theta = params.theta(j);
    let p = params.p();
    let cells = 1usize << resolution;
    let width = T::lit((-(resolution as f64)).exp2());
    // Cell a goes to slot rev(a) so that the Hadamard kernel (-1)^popcount(k & b)
    // becomes the Walsh kernel.
    let mut v = vec![T::zero(); cells];
    for a in 0..cells as u64 {
        let lo = T::lit(a as f64) * width;
        v[reverse_bits(a, resolution) as usize] = damping_mass(theta, p, lo, lo + width);
    }
    fwht(&mut v);
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub theta: f64,
    pub p: f64,
    pub k: u64,
    pub coeff: f64,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    /// `(theta, max |w_hat| / bound)` in the order the thetas were given.
    pub max_ratio: Vec<(f64, f64)>,
    pub violations: Vec<AuditRow>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Slack allowed on `|w_hat(k)| <= 4 min(theta, sup |I(wal_k)|)`.
pub const AUDIT_TOLERANCE: f64 = 1e-12;

/// Checks the coefficient bound `|w_hat(k)| <= 4 min(theta, sup|I(wal_k)|)`
/// for every `theta` in the grid and `1 <= k <= k_max`.
pub fn audit_lemma_bound(thetas: &[f64], p: f64, k_max: u64) -> Result<AuditReport> {
    if k_max > 1 << MAX_RESOLUTION {
        return Err(Error::Capacity(format!("k_max {k_max} above 2^{MAX_RESOLUTION}")));
    }
    let mut report = AuditReport::default();
    if thetas.is_empty() || k_max == 0 {
        return Ok(report);
    }
    let resolution = WalshIndex(k_max).resolution();
    let sup: Vec<f64> = (1..=k_max)
        .map(|k| sup_walsh_integral(WalshIndex(k)))
        .collect::<Result<_>>()?;
    for &theta in thetas {
        let params = DampingParams::new(vec![theta], p)?;
        let spectrum = walsh_spectrum(&params, 0, resolution)?;
        let mut worst = 0.0f64;
        for k in 1..=k_max {
            let coeff = spectrum[k as usize];
            let bound = 4.0 * theta.min(sup[(k - 1) as usize]);
            let ratio = coeff.abs() / bound;
            worst = worst.max(ratio);
            let row = AuditRow { theta, p, k, coeff, bound, ratio };
            if coeff.abs() > bound + AUDIT_TOLERANCE {
                report.violations.push(row.clone());
            }
            report.rows.push(row);
        }
        report.max_ratio.push((theta, worst));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walsh_reference_values() {
        assert_eq!(walsh(WalshIndex::new(0), 0.77), 1);
        assert_eq!(walsh(WalshIndex::new(1), 0.3), 1);
        assert_eq!(walsh(WalshIndex::new(1), 0.7), -1);
        assert_eq!(walsh(WalshIndex::new(3), 0.25), -1);
    }

    #[test]
    fn index_decomposition() {
        let k = WalshIndex::new(13);
        assert_eq!(k.resolution(), 4);
        assert_eq!(k.leading(), WalshIndex::new(8));
        assert_eq!(k.remainder(), WalshIndex::new(5));
        assert_eq!(WalshIndex::new(0).resolution(), 0);
    }

    #[test]
    fn sup_integral_reference_values() {
        assert_eq!(sup_walsh_integral(WalshIndex::new(1)).unwrap(), 0.5);
        assert_eq!(sup_walsh_integral(WalshIndex::new(2)).unwrap(), 0.25);
        assert!(sup_walsh_integral(WalshIndex::new(1 << 24)).is_err());
    }

    #[test]
    fn coefficient_reference_values() {
        for (theta, p) in [(0.1, 1.0), (0.3, 2.0)] {
            let params = DampingParams::new(vec![theta], p).unwrap();
            let c0 = walsh_coeff_w(&params, 0, WalshIndex::new(0)).unwrap();
            assert!((c0 - 1.0f64).abs() < 1e-15);
        }
        let half = DampingParams::new(vec![0.5f64], 1.0).unwrap();
        assert!(walsh_coeff_w(&half, 0, WalshIndex::new(1)).unwrap().abs() < 1e-16);
        let params = DampingParams::new(vec![0.2f64], 1.0).unwrap();
        let c2 = walsh_coeff_w(&params, 0, WalshIndex::new(2)).unwrap();
        assert!(c2.abs() <= 4.0 * 0.2f64.min(0.25));
    }

    #[test]
    fn spectrum_matches_direct_sums() {
        let params = DampingParams::new(vec![0.15f64], 1.0).unwrap();
        let spectrum = walsh_spectrum(&params, 0, 7).unwrap();
        for k in 0..128 {
            let direct = walsh_coeff_w(&params, 0, WalshIndex::new(k)).unwrap();
            assert!((spectrum[k as usize] - direct).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn audit_edge_cases() {
        assert!(audit_lemma_bound(&[], 1.0, 1024).unwrap().rows.is_empty());
        let report = audit_lemma_bound(&[0.5], 1.0, 4).unwrap();
        assert_eq!(report.rows[0].k, 1);
        assert!(report.rows[0].ratio < 1e-15);
        assert!(report.passed());
    }

    #[test]
    fn integral_is_zero_at_one_and_matches_cellwise_sum() {
        for k in 1..64u64 {
            let k = WalshIndex::new(k);
            assert!(walsh_integral(k, 1.0 - 1e-12f64).abs() < 1e-11);
        }
    }
}

//! Least-squares convergence rates.

use crate::error::{HarnessError, Result};
use crate::experiment::ResultRow;

/// OLS slope of `log2(rmse)` against `m` over rows with `m` in
/// `[lo, hi]`. All rows in the window must share one option.
pub fn fit_slope(rows: &[ResultRow], m_window: (u32, u32)) -> Result<f64> {
    let (lo, hi) = m_window;
    let window: Vec<&ResultRow> = rows.iter().filter(|r| r.m >= lo && r.m <= hi).collect();
    if window.len() < 3 {
        return Err(HarnessError::invalid(
            "m_window",
            format!("need at least 3 rows in [{lo}, {hi}], found {}", window.len()),
        ));
    }
    if let Some(r) = window.iter().find(|r| !(r.rmse > 0.0 && r.rmse.is_finite())) {
        return Err(HarnessError::invalid(
            "m_window",
            format!("rmse at m = {} is {}, not a positive number", r.m, r.rmse),
        ));
    }
    if window.iter().any(|r| r.option != window[0].option) {
        return Err(HarnessError::invalid("m_window", "rows mix several options"));
    }
    let xs: Vec<f64> = window.iter().map(|r| f64::from(r.m)).collect();
    let ys: Vec<f64> = window.iter().map(|r| r.rmse.log2()).collect();
    Ok(ols_slope(&xs, &ys))
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(rmse: impl Fn(u32) -> f64, ms: std::ops::RangeInclusive<u32>) -> Vec<ResultRow> {
        ms.map(|m| ResultRow {
            option: "1".into(),
            s: 5,
            m_growth: 0.0,
            m,
            n: 1 << m,
            rmse: rmse(m),
            mean_estimate: 1.0,
            replicates: 30,
            seed: 0,
            failures: 0,
        })
        .collect()
    }

    #[test]
    fn exact_lines() {
        let full = rows(|m| 3.0 * (-f64::from(m)).exp2(), 4..=12);
        assert!((fit_slope(&full, (4, 12)).unwrap() + 1.0).abs() < 1e-12);
        let half = rows(|m| 0.7 * (-0.5 * f64::from(m)).exp2(), 4..=12);
        assert!((fit_slope(&half, (6, 10)).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_windows() {
        let r = rows(|_| 1.0, 4..=12);
        assert!(fit_slope(&r, (4, 5)).is_err());
        assert!(fit_slope(&r, (20, 30)).is_err());
        let zero = rows(|_| 0.0, 4..=8);
        assert!(fit_slope(&zero, (4, 8)).is_err());
        let mut mixed = rows(|m| f64::from(m), 4..=8);
        mixed[2].option = "2".into();
        assert!(fit_slope(&mixed, (4, 8)).is_err());
    }
}

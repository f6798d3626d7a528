//! Sweep execution.

use std::borrow::Cow;
use std::path::{Path, PathBuf};

use bdqmc::digitalnet::{DigitalNet, DirectionNumbers};
use bdqmc::estimator::estimate_rmse;
use bdqmc::{DampingParams64, ProductGaussianTest64, TransportMap64};
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ResolvedMap};
use crate::error::{HarnessError, Result};

/// Environment variable naming a directory that holds the direction-number table.
pub const DATA_DIR_ENV: &str = "BDQMC_DATA_DIR";
/// File name of the table inside the data directory.
pub const DIRECTION_FILE: &str = "new-joe-kuo-6.21201";

/// One line of the results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub option: String,
    pub s: usize,
    #[serde(rename = "M")]
    pub m_growth: f64,
    pub m: u32,
    pub n: u64,
    pub rmse: f64,
    pub mean_estimate: f64,
    pub replicates: usize,
    pub seed: u64,
    pub failures: usize,
}

/// Loads direction numbers from `explicit`, else from `$BDQMC_DATA_DIR`,
/// else falls back to the table compiled into the library.
pub fn load_directions(explicit: Option<&Path>) -> Result<Cow<'static, DirectionNumbers>> {
    let path: Option<PathBuf> = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(DATA_DIR_ENV).map(|d| PathBuf::from(d).join(DIRECTION_FILE)),
    };
    match path {
        None => Ok(Cow::Borrowed(DirectionNumbers::joe_kuo())),
        Some(path) => {
            let file = std::fs::File::open(&path).map_err(|e| HarnessError::io(&path, e))?;
            let dirs = DirectionNumbers::parse(std::io::BufReader::new(file))?;
            Ok(Cow::Owned(dirs))
        }
    }
}

/// Builds the transport for resolution `m`. Rule-based truncation widths
/// depend on `n = 2^m`.
pub fn build_map(resolved: ResolvedMap, s: usize, m: u32) -> Result<TransportMap64> {
    Ok(match resolved {
        ResolvedMap::Damping { theta0, exponent, p } => {
            TransportMap64::boundary_damping(DampingParams64::power_schedule(s, theta0, exponent, p)?)
        }
        ResolvedMap::Inversion => TransportMap64::inversion(),
        ResolvedMap::Mobius => TransportMap64::mobius(),
        ResolvedMap::Truncation { rule } => TransportMap64::truncation(rule.half_width(1usize << m))?,
    })
}

/// Runs the sweep described by `cfg`, one row per `m` in ascending order.
///
/// The base net is built once per `m`; replicate `r` scrambles it with
/// stream `r` of `cfg.seed`, so the rows are a pure function of `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let dirs = load_directions(cfg.dirs.as_deref())?;
    run_with_directions(cfg, &dirs)
}

pub fn run_with_directions(cfg: &ExperimentConfig, dirs: &DirectionNumbers) -> Result<Vec<ResultRow>> {
    let resolved = cfg.resolve()?;
    let (lo, hi) = cfg.resolved_m_range()?;
    if cfg.s > dirs.max_dim() {
        return Err(HarnessError::invalid(
            "s",
            format!("direction table covers {} dimensions, asked for {}", dirs.max_dim(), cfg.s),
        ));
    }
    let f = ProductGaussianTest64::new(cfg.s, cfg.m)?;
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for m in lo..=hi {
        let map = build_map(resolved, cfg.s, m)?;
        let net = DigitalNet::sobol(dirs, cfg.s, m)?;
        let run = estimate_rmse(&map, &f, f.exact_mu(), &net, cfg.replicates, cfg.seed)?;
        rows.push(ResultRow {
            option: cfg.option.to_string(),
            s: cfg.s,
            m_growth: cfg.m,
            m,
            n: run.n as u64,
            rmse: run.rmse,
            mean_estimate: run.mean,
            replicates: run.replicates,
            seed: cfg.seed,
            failures: run.failures,
        });
    }
    Ok(rows)
}

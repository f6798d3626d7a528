//! Convergence experiments for boundary-damping QMC: option presets,
//! sweeps over `n = 2^m`, CSV/SVG output and rate fitting.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod slope;

pub use config::{describe_presets, preset, ExperimentConfig, MapName, OptionSpec, ResolvedMap, TruncationRule};
pub use error::{HarnessError, Result};
pub use experiment::{build_map, load_directions, run_experiment, run_with_directions, ResultRow};
pub use output::{emit_audit_csv, emit_csv, emit_plot, read_csv, render_svg, write_audit_csv, write_csv};
pub use slope::fit_slope;

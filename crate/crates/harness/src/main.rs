use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bdqmc::digitalnet::{check_net, min_t, sobol_points};
use bdqmc::walsh::audit_lemma_bound;
use bdqmc_harness::config::{default_m_range, DEFAULT_REPLICATES, DEFAULT_SEED};
use bdqmc_harness::{
    describe_presets, emit_audit_csv, emit_csv, emit_plot, fit_slope, load_directions, read_csv, run_with_directions,
    write_audit_csv, write_csv, ExperimentConfig, HarnessError, OptionSpec, ResultRow, TruncationRule,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bdqmc", version, about = "Boundary-damping QMC convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run convergence sweeps and write CSV (and SVG with --out).
    Run(RunArgs),
    /// Check the Walsh coefficient bound of the damping weight.
    AuditWalsh(AuditArgs),
    /// Verify the (t, m, s)-net property of unscrambled Sobol' points.
    CheckNet(CheckNetArgs),
    /// Fit log2-rmse slopes from a results CSV.
    Slope(SlopeArgs),
    /// Print the resolved parameters of options 1-8.
    Presets,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file with one config object or an array of them.
    #[arg(long, conflicts_with_all = ["option", "s", "growth"])]
    config: Option<PathBuf>,
    /// Preset ids 1-8 or map names, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "config")]
    option: Vec<String>,
    #[arg(long, required_unless_present = "config")]
    s: Option<usize>,
    #[arg(long = "M", value_name = "M", required_unless_present = "config")]
    growth: Option<f64>,
    #[arg(long)]
    m_lo: Option<u32>,
    #[arg(long)]
    m_hi: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    replicates: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    theta0: Option<f64>,
    #[arg(long)]
    theta_exp: Option<f64>,
    /// `sqrt(2 ln n)`, `sqrt(5 ln n)` or a fixed half-width.
    #[arg(long)]
    a_rule: Option<String>,
    /// Direction-number table (Joe-Kuo format).
    #[arg(long)]
    dirs: Option<PathBuf>,
    /// Output directory for results.csv and convergence.svg; CSV goes to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2,0.4")]
    theta_list: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 4096)]
    k_max: u64,
    /// CSV destination; a per-theta summary is printed either way.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckNetArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    dirs: Option<PathBuf>,
}

#[derive(Args)]
struct SlopeArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    m_lo: u32,
    #[arg(long)]
    m_hi: u32,
}

fn configs_from_args(args: &RunArgs) -> anyhow::Result<Vec<ExperimentConfig>> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io { path: path.clone(), source: e })?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| HarnessError::Json { path: path.clone(), source: e })?;
        let configs = match value {
            serde_json::Value::Array(items) => items
                .into_iter()
                .map(serde_json::from_value)
                .collect::<Result<Vec<ExperimentConfig>, _>>(),
            other => serde_json::from_value(other).map(|c| vec![c]),
        }
        .map_err(|e| HarnessError::Json { path: path.clone(), source: e })?;
        return Ok(configs);
    }
    let s = args.s.context("--s is required")?;
    let growth = args.growth.context("--M is required")?;
    let m_range = match (args.m_lo, args.m_hi) {
        (Some(lo), Some(hi)) => Some([lo, hi]),
        (None, None) => None,
        (lo, hi) => {
            let [dlo, dhi] = default_m_range(s).unwrap_or([lo.or(hi).unwrap_or(0); 2]);
            Some([lo.unwrap_or(dlo), hi.unwrap_or(dhi)])
        }
    };
    let a_rule = args.a_rule.as_deref().map(str::parse::<TruncationRule>).transpose()?;
    args.option
        .iter()
        .map(|o| {
            let mut cfg = ExperimentConfig::new(o.parse::<OptionSpec>()?, s, growth)
                .with_replicates(args.replicates)
                .with_seed(args.seed);
            cfg.m_range = m_range;
            cfg.theta0 = args.theta0;
            cfg.theta_exponent = args.theta_exp;
            cfg.truncation_rule = a_rule;
            cfg.dirs = args.dirs.clone();
            cfg.output = args.out.clone();
            Ok(cfg)
        })
        .collect()
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let configs = configs_from_args(&args)?;
    let mut rows: Vec<ResultRow> = Vec::new();
    for cfg in &configs {
        let dirs = load_directions(cfg.dirs.as_deref())?;
        let part = run_with_directions(cfg, &dirs)?;
        for r in &part {
            eprintln!("option {} m={:>2} rmse={:.4e} mean={:.6}", r.option, r.m, r.rmse, r.mean_estimate);
        }
        rows.extend(part);
    }
    let out = args.out.or_else(|| configs.iter().find_map(|c| c.output.clone()));
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).map_err(|e| HarnessError::Io { path: dir.clone(), source: e })?;
            emit_csv(&rows, &dir.join("results.csv"))?;
            if rows.iter().any(|r| r.rmse > 0.0) {
                emit_plot(&rows, &dir.join("convergence.svg"))?;
            }
            eprintln!("wrote {}", dir.display());
        }
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(())
}

fn audit(args: AuditArgs) -> anyhow::Result<bool> {
    let report = audit_lemma_bound(&args.theta_list, args.p, args.k_max)?;
    for (theta, ratio) in &report.max_ratio {
        println!("theta={theta} p={} k_max={} max_ratio={ratio:.6}", args.p, args.k_max);
    }
    for v in &report.violations {
        println!("VIOLATION theta={} k={} |coeff|={:.6e} bound={:.6e}", v.theta, v.k, v.coeff.abs(), v.bound);
    }
    match &args.out {
        Some(path) => emit_audit_csv(&report, path)?,
        None if report.rows.len() <= 64 => write_audit_csv(&report, std::io::stdout().lock())?,
        None => {}
    }
    println!("violations: {}", report.violations.len());
    Ok(report.passed())
}

fn check_net_cmd(args: CheckNetArgs) -> anyhow::Result<bool> {
    if args.s == 0 {
        return Err(HarnessError::Validation { field: "s", reason: "must be at least 1".into() }.into());
    }
    if args.m > 24 {
        return Err(HarnessError::Validation { field: "m", reason: "exhaustive check limited to m <= 24".into() }.into());
    }
    let dirs = load_directions(args.dirs.as_deref())?;
    let pts = sobol_points(&dirs, args.s, args.m)?.rows::<f64>();
    let ok = check_net(&pts, args.t, args.m, args.s);
    let best = min_t(&pts, args.m, args.s);
    println!(
        "s={} m={} t={}: {} (minimal t = {best})",
        args.s,
        args.m,
        args.t,
        if ok { "pass" } else { "fail" }
    );
    Ok(ok)
}

fn slope_cmd(args: SlopeArgs) -> anyhow::Result<()> {
    let rows = read_csv(&args.csv)?;
    let mut options: Vec<&str> = Vec::new();
    for r in &rows {
        if !options.contains(&r.option.as_str()) {
            options.push(&r.option);
        }
    }
    for option in options {
        let subset: Vec<ResultRow> = rows.iter().filter(|r| r.option == option).cloned().collect();
        let slope = fit_slope(&subset, (args.m_lo, args.m_hi))?;
        println!("option {option}: slope {slope:.4} over m in [{}, {}]", args.m_lo, args.m_hi);
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<HarnessError>() {
        Some(e) if e.is_validation() => 2,
        Some(_) => 1,
        None if err.downcast_ref::<bdqmc::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => run(a).map(|_| true),
        Command::AuditWalsh(a) => audit(a),
        Command::CheckNet(a) => check_net_cmd(a),
        Command::Slope(a) => slope_cmd(a).map(|_| true),
        Command::Presets => {
            print!("{}", describe_presets());
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}


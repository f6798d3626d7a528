//! Experiment configuration and the option presets.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const DEFAULT_REPLICATES: usize = 30;
pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_P: f64 = 1.0;

/// How the truncation half-width `a` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TruncationRule {
    /// `a = sqrt(2 ln n)`
    Sqrt2LnN,
    /// `a = sqrt(5 ln n)`
    Sqrt5LnN,
    Explicit(f64),
}

impl TruncationRule {
    pub fn half_width(self, n: usize) -> f64 {
        let ln_n = (n as f64).ln();
        match self {
            Self::Sqrt2LnN => (2.0 * ln_n).sqrt(),
            Self::Sqrt5LnN => (5.0 * ln_n).sqrt(),
            Self::Explicit(a) => a,
        }
    }
}

impl fmt::Display for TruncationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sqrt2LnN => f.write_str("sqrt(2 ln n)"),
            Self::Sqrt5LnN => f.write_str("sqrt(5 ln n)"),
            Self::Explicit(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for TruncationRule {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "sqrt(2lnn)" | "sqrt2ln" => Ok(Self::Sqrt2LnN),
            "sqrt(5lnn)" | "sqrt5ln" => Ok(Self::Sqrt5LnN),
            other => match other.parse::<f64>() {
                Ok(a) if a.is_finite() && a > 0.0 => Ok(Self::Explicit(a)),
                _ => Err(HarnessError::invalid(
                    "truncation_rule",
                    format!("expected `sqrt(2 ln n)`, `sqrt(5 ln n)` or a positive number, got `{s}`"),
                )),
            },
        }
    }
}

impl TryFrom<String> for TruncationRule {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TruncationRule> for String {
    fn from(r: TruncationRule) -> Self {
        r.to_string()
    }
}

/// A transport family chosen without a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapName {
    Damping,
    Inversion,
    Mobius,
    Truncation,
}

/// Either a numbered preset or an explicit transport family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OptionSpec {
    Preset(u8),
    Map(MapName),
}

impl fmt::Display for OptionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Preset(id) => write!(f, "{id}"),
            Self::Map(MapName::Damping) => f.write_str("damping"),
            Self::Map(MapName::Inversion) => f.write_str("inversion"),
            Self::Map(MapName::Mobius) => f.write_str("mobius"),
            Self::Map(MapName::Truncation) => f.write_str("truncation"),
        }
    }
}

impl FromStr for OptionSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(id) = s.parse::<u8>() {
            return Ok(Self::Preset(id));
        }
        serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
            .map_err(|_| HarnessError::invalid("option", format!("unknown option `{s}`")))
    }
}

/// One convergence study: a transport option, an integrand and a sweep over `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub option: OptionSpec,
    pub s: usize,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_range: Option<[u32; 2]>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_rule: Option<TruncationRule>,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirs: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_replicates() -> usize {
    DEFAULT_REPLICATES
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_p() -> f64 {
    DEFAULT_P
}

impl ExperimentConfig {
    pub fn new(option: OptionSpec, s: usize, m: f64) -> Self {
        Self {
            option,
            s,
            m,
            m_range: None,
            replicates: DEFAULT_REPLICATES,
            seed: DEFAULT_SEED,
            theta0: None,
            theta_exponent: None,
            truncation_rule: None,
            p: DEFAULT_P,
            dirs: None,
            output: None,
        }
    }

    pub fn with_m_range(mut self, lo: u32, hi: u32) -> Self {
        self.m_range = Some([lo, hi]);
        self
    }

    pub fn with_replicates(mut self, r: usize) -> Self {
        self.replicates = r;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// The `m` sweep, falling back to the shipped range for `s` in {5, 30, 128}.
    pub fn resolved_m_range(&self) -> Result<(u32, u32)> {
        let [lo, hi] = match self.m_range {
            Some(r) => r,
            None => match default_m_range(self.s) {
                Some(r) => r,
                None => {
                    return Err(HarnessError::invalid(
                        "m_range",
                        format!("no default for s = {}; give m_range explicitly", self.s),
                    ))
                }
            },
        };
        if lo > hi {
            return Err(HarnessError::invalid("m_range", format!("[{lo}, {hi}] is empty")));
        }
        if hi > bdqmc::digitalnet::MAX_RESOLUTION {
            return Err(HarnessError::invalid(
                "m_range",
                format!("m = {hi} exceeds {}", bdqmc::digitalnet::MAX_RESOLUTION),
            ));
        }
        Ok((lo, hi))
    }

    /// Checks every field and binds the transport parameters.
    pub fn resolve(&self) -> Result<ResolvedMap> {
        if self.s == 0 {
            return Err(HarnessError::invalid("s", "must be at least 1"));
        }
        if !(self.m.is_finite() && self.m < 0.5) {
            return Err(HarnessError::invalid("M", format!("must be finite and below 0.5, got {}", self.m)));
        }
        if self.replicates < 2 {
            return Err(HarnessError::invalid("replicates", format!("need at least 2, got {}", self.replicates)));
        }
        if !(self.p.is_finite() && self.p >= 1.0) {
            return Err(HarnessError::invalid("p", format!("must be at least 1, got {}", self.p)));
        }
        self.resolved_m_range()?;

        let base = match self.option {
            OptionSpec::Preset(id) => preset(id, self.m)?,
            OptionSpec::Map(MapName::Damping) => ResolvedMap::Damping {
                theta0: 0.1,
                exponent: 0.0,
                p: DEFAULT_P,
            },
            OptionSpec::Map(MapName::Inversion) => ResolvedMap::Inversion,
            OptionSpec::Map(MapName::Mobius) => ResolvedMap::Mobius,
            OptionSpec::Map(MapName::Truncation) => ResolvedMap::Truncation {
                rule: TruncationRule::Sqrt2LnN,
            },
        };
        let resolved = match base {
            ResolvedMap::Damping { theta0, exponent, .. } => {
                if self.truncation_rule.is_some() {
                    return Err(HarnessError::invalid("truncation_rule", "only applies to truncation"));
                }
                let theta0 = self.theta0.unwrap_or(theta0);
                let exponent = self.theta_exponent.unwrap_or(exponent);
                if !(theta0 > 0.0 && theta0 <= 0.5) {
                    return Err(HarnessError::invalid("theta0", format!("must lie in (0, 1/2], got {theta0}")));
                }
                if !(exponent.is_finite() && exponent >= 0.0) {
                    return Err(HarnessError::invalid(
                        "theta_exponent",
                        format!("must be finite and nonnegative, got {exponent}"),
                    ));
                }
                ResolvedMap::Damping { theta0, exponent, p: self.p }
            }
            ResolvedMap::Truncation { rule } => {
                self.reject_theta("truncation")?;
                ResolvedMap::Truncation {
                    rule: self.truncation_rule.unwrap_or(rule),
                }
            }
            other => {
                self.reject_theta("this option")?;
                if self.truncation_rule.is_some() {
                    return Err(HarnessError::invalid("truncation_rule", "only applies to truncation"));
                }
                other
            }
        };
        Ok(resolved)
    }

    fn reject_theta(&self, what: &str) -> Result<()> {
        if self.theta0.is_some() {
            return Err(HarnessError::invalid("theta0", format!("does not apply to {what}")));
        }
        if self.theta_exponent.is_some() {
            return Err(HarnessError::invalid("theta_exponent", format!("does not apply to {what}")));
        }
        Ok(())
    }
}

/// Shipped `m` sweeps for the three experiment dimensions.
pub fn default_m_range(s: usize) -> Option<[u32; 2]> {
    match s {
        5 => Some([6, 16]),
        30 => Some([8, 16]),
        128 => Some([8, 14]),
        _ => None,
    }
}

/// Fully bound transport parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedMap {
    /// `theta_j = theta0 * j^(-exponent)`, `j = 1..=s`.
    Damping { theta0: f64, exponent: f64, p: f64 },
    Inversion,
    Mobius,
    Truncation { rule: TruncationRule },
}

impl fmt::Display for ResolvedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Damping { theta0, exponent, p } if exponent == 0.0 => {
                write!(f, "boundary damping, theta_j = {theta0}, p = {p}")
            }
            Self::Damping { theta0, exponent, p } => {
                write!(f, "boundary damping, theta_j = {theta0} j^-{exponent}, p = {p}")
            }
            Self::Inversion => f.write_str("inversion, T(u) = Phi^-1(u)"),
            Self::Mobius => f.write_str("mobius, T(u) = -cot(pi u)"),
            Self::Truncation { rule } => write!(f, "truncation, T(u) = a (2u - 1), a = {rule}"),
        }
    }
}

pub const PRESET_IDS: std::ops::RangeInclusive<u8> = 1..=8;

/// Binds preset `id` for growth rate `m`.
pub fn preset(id: u8, m: f64) -> Result<ResolvedMap> {
    let damping = |exponent: f64| ResolvedMap::Damping {
        theta0: 0.1,
        exponent,
        p: DEFAULT_P,
    };
    Ok(match id {
        1 => damping(0.0),
        2 | 6 => damping(2.0),
        3 => ResolvedMap::Mobius,
        4 => ResolvedMap::Truncation {
            rule: if m == 0.0 {
                TruncationRule::Sqrt2LnN
            } else {
                TruncationRule::Sqrt5LnN
            },
        },
        5 => ResolvedMap::Inversion,
        7 => damping(4.0),
        8 => damping(6.0),
        _ => return Err(HarnessError::invalid("option", format!("preset {id} is not in 1..=8"))),
    })
}

/// Human-readable listing of every preset.
pub fn describe_presets() -> String {
    let mut out = String::new();
    for id in PRESET_IDS {
        let line = match id {
            4 => format!(
                "option 4: truncation, T(u) = a (2u - 1), a = {} for M = 0, a = {} otherwise",
                TruncationRule::Sqrt2LnN,
                TruncationRule::Sqrt5LnN
            ),
            _ => format!("option {id}: {}", preset(id, 0.0).expect("preset in range")),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

//! TOML experiment configuration.
//!
//! A file holds an optional `experiment` name, an optional `output` path and
//! one table named after the experiment:
//!
//! ```toml
//! experiment = "sharpness"
//! output = "sharpness.csv"
//!
//! [sharpness]
//! s = 0.0
//! p = 1.2
//! m = [8.0, 16.0, 32.0, 64.0]
//! ```
//!
//! Unknown keys are rejected everywhere, and every value is validated before
//! any computation starts. Errors carry the line of the offending key.

use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use displab_core::estimates::{frequency_localized_admissible, inhomogeneous_admissible};
use displab_core::{EstimateParams, GridSpec};
use serde::Deserialize;

use crate::experiments::inhomogeneous_kind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Region,
    Ratio,
    FreqLocal,
    Sharpness,
    Mcnorm,
    Solve,
    Kdv,
}

impl Experiment {
    /// Name used on the command line and as the config table name.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Region => "region",
            Experiment::Ratio => "ratio",
            Experiment::FreqLocal => "freq-local",
            Experiment::Sharpness => "sharpness",
            Experiment::Mcnorm => "mcnorm",
            Experiment::Solve => "solve",
            Experiment::Kdv => "kdv",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rejected configuration, with the 1-based line it refers to when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Option<String>,
    output: Option<PathBuf>,
    region: Option<RegionConfig>,
    ratio: Option<RatioConfig>,
    #[serde(rename = "freq-local")]
    freq_local: Option<FreqLocalConfig>,
    sharpness: Option<SharpnessConfig>,
    mcnorm: Option<McnormConfig>,
    solve: Option<SolveConfig>,
    kdv: Option<SolveConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "one")]
    pub dim: usize,
    pub points: usize,
    pub half_width: f64,
    pub time_points: usize,
    pub half_time: f64,
}

impl GridConfig {
    pub fn spec(&self) -> displab_core::Result<GridSpec> {
        GridSpec::new(self.dim, self.points, self.half_width, self.time_points, self.half_time)
    }
}

/// Model weights on the space-time grid.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WeightConfig {
    /// `value` everywhere.
    Constant { value: f64 },
    /// `floor + amplitude exp(-|x|^2/width^2 - t^2/duration^2)`.
    Gaussian {
        #[serde(default = "unit")]
        width: f64,
        #[serde(default = "unit")]
        duration: f64,
        #[serde(default = "unit")]
        amplitude: f64,
        #[serde(default)]
        floor: f64,
    },
    /// `(|x|^2 + |t|)^exponent + floor`, singular node regularized.
    ParabolicPower {
        exponent: f64,
        #[serde(default)]
        floor: f64,
    },
    /// `inside` on `|x_i| < half_width, |t| < half_time`, `outside` elsewhere.
    Box {
        half_width: f64,
        half_time: f64,
        #[serde(default = "unit")]
        inside: f64,
        #[serde(default)]
        outside: f64,
    },
}

impl WeightConfig {
    pub fn label(&self) -> &'static str {
        match self {
            WeightConfig::Constant { .. } => "constant",
            WeightConfig::Gaussian { .. } => "gaussian",
            WeightConfig::ParabolicPower { .. } => "parabolic-power",
            WeightConfig::Box { .. } => "box",
        }
    }

    fn validate(&self) -> Result<(), String> {
        let nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(format!("{name} must be finite and >= 0, got {v}"))
            }
        };
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(format!("{name} must be finite and > 0, got {v}"))
            }
        };
        match *self {
            WeightConfig::Constant { value } => nonneg("value", value),
            WeightConfig::Gaussian { width, duration, amplitude, floor } => {
                positive("width", width)?;
                positive("duration", duration)?;
                nonneg("amplitude", amplitude)?;
                nonneg("floor", floor)
            }
            WeightConfig::ParabolicPower { exponent, floor } => {
                if !exponent.is_finite() {
                    return Err(format!("exponent must be finite, got {exponent}"));
                }
                nonneg("floor", floor)
            }
            WeightConfig::Box { half_width, half_time, inside, outside } => {
                positive("half_width", half_width)?;
                positive("half_time", half_time)?;
                nonneg("inside", inside)?;
                nonneg("outside", outside)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stride {
    #[default]
    Adaptive,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    #[default]
    Fractional,
    Kdv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    #[serde(default)]
    pub equation: Equation,
    pub gamma: Option<f64>,
    pub dim: Option<usize>,
    pub k: Option<u32>,
    #[serde(default = "lattice_size")]
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioKind {
    #[default]
    Homogeneous,
    Schrodinger,
    Wave,
    WaveFractional,
    Smoothing,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioConfig {
    #[serde(default)]
    pub kind: RatioKind,
    #[serde(default = "two")]
    pub gamma: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default = "two")]
    pub p: f64,
    pub r: Option<f64>,
    pub seeds: Vec<u64>,
    /// `[lo, hi]` annulus of the seeded data spectrum; every mode if absent.
    pub band: Option<[f64; 2]>,
    #[serde(default)]
    pub x0: f64,
    #[serde(default)]
    pub stride: Stride,
    pub grid: GridConfig,
    pub weight: Option<WeightConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreqLocalConfig {
    #[serde(default = "two")]
    pub gamma: f64,
    #[serde(default)]
    pub s: f64,
    pub p: f64,
    pub alpha: f64,
    pub k: Vec<i32>,
    #[serde(default = "profile_center")]
    pub center: f64,
    #[serde(default = "profile_width")]
    pub width: f64,
    #[serde(default)]
    pub stride: Stride,
    pub grid: GridConfig,
    pub weight: WeightConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessConfig {
    #[serde(default)]
    pub s: f64,
    pub p: f64,
    #[serde(default = "one")]
    pub dim: usize,
    pub m: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McnormConfig {
    pub alpha: f64,
    pub p: f64,
    #[serde(default = "two")]
    pub gamma: f64,
    #[serde(default)]
    pub stride: Stride,
    /// Exponent of the maximal function whose norm ratio is reported.
    pub maximal_q: Option<f64>,
    /// Dyadic exponent of the homogeneity check.
    pub homogeneity_m: Option<u32>,
    pub grid: GridConfig,
    pub weights: Vec<WeightConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveKind {
    #[default]
    Schrodinger,
    Wave,
}

/// Shared by `solve` (Schrodinger and wave kinds) and `kdv`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    pub kind: Option<SolveKind>,
    pub gamma: Option<f64>,
    pub k: Option<u32>,
    #[serde(default = "default_p")]
    pub p: f64,
    pub seeds: Vec<u64>,
    /// Data spectrum is the annulus `|xi| <= bandwidth`.
    #[serde(default = "default_bandwidth")]
    pub bandwidth: f64,
    /// Amplitude of `V = a (0.2 + exp(-|x|^2)) (1 + 0.3 sin t)` before rescaling.
    #[serde(default = "unit")]
    pub potential: f64,
    /// Amplitude of the forcing `b F_seed(x) exp(-t^2)`.
    #[serde(default)]
    pub forcing: f64,
    #[serde(default = "default_target")]
    pub contraction_target: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    pub grid: GridConfig,
}

fn one() -> usize {
    1
}
fn unit() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn lattice_size() -> usize {
    200
}
fn profile_center() -> f64 {
    1.1
}
fn profile_width() -> f64 {
    0.3
}
fn default_p() -> f64 {
    1.5
}
fn default_bandwidth() -> f64 {
    4.0
}
fn default_target() -> f64 {
    0.5
}
fn default_tol() -> f64 {
    1e-8
}
fn default_max_iter() -> usize {
    50
}

/// The validated table of the chosen experiment.
#[derive(Debug, Clone)]
pub enum Section {
    Region(RegionConfig),
    Ratio(RatioConfig),
    FreqLocal(FreqLocalConfig),
    Sharpness(SharpnessConfig),
    Mcnorm(McnormConfig),
    Solve(SolveConfig),
    Kdv(SolveConfig),
}

#[derive(Debug, Clone)]
pub struct Config {
    pub experiment: Experiment,
    pub output: Option<PathBuf>,
    pub section: Section,
}

/// Locates `key` inside table `table` (dotted path, `""` for the root) to
/// attach line numbers to validation errors.
struct LineIndex<'a> {
    text: &'a str,
}

impl LineIndex<'_> {
    fn table_of(header: &str) -> Option<String> {
        let h = header.trim();
        let inner = h.strip_prefix("[[").and_then(|r| r.strip_suffix("]]"))
            .or_else(|| h.strip_prefix('[').and_then(|r| r.strip_suffix(']')))?;
        Some(inner.trim().trim_matches('"').to_string())
    }

    fn line(&self, table: &str, key: Option<&str>) -> Option<usize> {
        let mut current = String::new();
        let mut header_line = None;
        for (i, raw) in self.text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.starts_with('[') {
                if let Some(t) = Self::table_of(line) {
                    current = t;
                    if current == table && header_line.is_none() {
                        header_line = Some(i + 1);
                    }
                }
                continue;
            }
            if current != table {
                continue;
            }
            if let Some(key) = key {
                if let Some((k, _)) = line.split_once('=') {
                    if k.trim().trim_matches('"') == key {
                        return Some(i + 1);
                    }
                }
            }
        }
        header_line
    }

    fn error(&self, table: &str, key: Option<&str>, message: impl Into<String>) -> ConfigError {
        let path = match (table, key) {
            ("", Some(k)) => k.to_string(),
            (t, Some(k)) => format!("{t}.{k}"),
            (t, None) => format!("[{t}]"),
        };
        ConfigError {
            line: self.line(table, key),
            message: format!("{path}: {}", message.into()),
        }
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses and validates `text` for `experiment`.
pub fn parse(text: &str, experiment: Experiment) -> Result<Config, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError {
        line: e.span().map(|s| line_of_offset(text, s.start)),
        message: e.message().to_string(),
    })?;
    let idx = LineIndex { text };
    if let Some(name) = &raw.experiment {
        if name != experiment.name() {
            return Err(idx.error(
                "",
                Some("experiment"),
                format!("config is for `{name}` but `{experiment}` was requested"),
            ));
        }
    }
    let present: Vec<&str> = [
        ("region", raw.region.is_some()),
        ("ratio", raw.ratio.is_some()),
        ("freq-local", raw.freq_local.is_some()),
        ("sharpness", raw.sharpness.is_some()),
        ("mcnorm", raw.mcnorm.is_some()),
        ("solve", raw.solve.is_some()),
        ("kdv", raw.kdv.is_some()),
    ]
    .into_iter()
    .filter_map(|(name, on)| on.then_some(name))
    .collect();
    if let Some(other) = present.iter().find(|&&n| n != experiment.name()) {
        return Err(idx.error(
            other,
            None,
            format!("table does not belong to experiment `{experiment}`"),
        ));
    }
    let missing = || ConfigError {
        line: None,
        message: format!("missing table [{experiment}]"),
    };
    let section = match experiment {
        Experiment::Region => Section::Region(validate_region(raw.region.ok_or_else(missing)?, &idx)?),
        Experiment::Ratio => Section::Ratio(validate_ratio(raw.ratio.ok_or_else(missing)?, &idx)?),
        Experiment::FreqLocal => {
            Section::FreqLocal(validate_freq_local(raw.freq_local.ok_or_else(missing)?, &idx)?)
        }
        Experiment::Sharpness => {
            Section::Sharpness(validate_sharpness(raw.sharpness.ok_or_else(missing)?, &idx)?)
        }
        Experiment::Mcnorm => Section::Mcnorm(validate_mcnorm(raw.mcnorm.ok_or_else(missing)?, &idx)?),
        Experiment::Solve => {
            Section::Solve(validate_solve(raw.solve.ok_or_else(missing)?, "solve", &idx)?)
        }
        Experiment::Kdv => Section::Kdv(validate_solve(raw.kdv.ok_or_else(missing)?, "kdv", &idx)?),
    };
    Ok(Config {
        experiment,
        output: raw.output,
        section,
    })
}

fn check(cond: bool, idx: &LineIndex, table: &str, key: &str, message: impl Into<String>) -> Result<(), ConfigError> {
    if cond {
        Ok(())
    } else {
        Err(idx.error(table, Some(key), message))
    }
}

fn validate_grid(grid: &GridConfig, table: &str, idx: &LineIndex) -> Result<(), ConfigError> {
    let path = format!("{table}.grid");
    grid.spec().map(|_| ()).map_err(|e| idx.error(&path, None, e.to_string()))
}

fn validate_weight(w: &WeightConfig, table: &str, idx: &LineIndex) -> Result<(), ConfigError> {
    w.validate().map_err(|m| idx.error(table, None, m))
}

fn validate_seeds(seeds: &[u64], table: &str, idx: &LineIndex) -> Result<(), ConfigError> {
    check(!seeds.is_empty(), idx, table, "seeds", "at least one seed is required")?;
    check(
        seeds.iter().all(|&s| s <= i64::MAX as u64),
        idx,
        table,
        "seeds",
        "seeds must be below 2^63",
    )
}

fn validate_region(c: RegionConfig, idx: &LineIndex) -> Result<RegionConfig, ConfigError> {
    let t = "region";
    check((1..=2000).contains(&c.size), idx, t, "size", format!("must be in 1..=2000, got {}", c.size))?;
    match c.equation {
        Equation::Fractional => {
            check(c.k.is_none(), idx, t, "k", "only used with equation = \"kdv\"")?;
            let gamma = c.gamma.ok_or_else(|| idx.error(t, None, "missing key `gamma`"))?;
            check(gamma.is_finite() && gamma >= 1.0, idx, t, "gamma", format!("must be >= 1, got {gamma}"))?;
            let dim = c.dim.ok_or_else(|| idx.error(t, None, "missing key `dim`"))?;
            check(dim >= 1, idx, t, "dim", "must be >= 1")?;
        }
        Equation::Kdv => {
            check(c.gamma.is_none(), idx, t, "gamma", "fixed to 2k+1 for equation = \"kdv\"")?;
            check(c.dim.is_none() || c.dim == Some(1), idx, t, "dim", "the Airy flows are one-dimensional")?;
            let k = c.k.ok_or_else(|| idx.error(t, None, "missing key `k`"))?;
            check(k >= 1, idx, t, "k", "must be >= 1")?;
        }
    }
    Ok(c)
}

fn validate_exponent(p: f64, idx: &LineIndex, table: &str) -> Result<(), ConfigError> {
    check(p.is_finite() && p >= 1.0, idx, table, "p", format!("must be >= 1, got {p}"))
}

fn validate_ratio(c: RatioConfig, idx: &LineIndex) -> Result<RatioConfig, ConfigError> {
    let t = "ratio";
    validate_grid(&c.grid, t, idx)?;
    validate_seeds(&c.seeds, t, idx)?;
    validate_exponent(c.p, idx, t)?;
    check(c.gamma.is_finite() && c.gamma >= 1.0, idx, t, "gamma", format!("must be >= 1, got {}", c.gamma))?;
    check(c.s.is_finite(), idx, t, "s", "must be finite")?;
    if let Some([lo, hi]) = c.band {
        check(lo >= 0.0 && hi > lo, idx, t, "band", format!("need 0 <= lo < hi, got [{lo}, {hi}]"))?;
    }
    match c.kind {
        RatioKind::Smoothing => {
            check(c.weight.is_none(), idx, "ratio.weight", "kind", "the smoothing ratio takes no weight")?;
            check(c.grid.dim == 1, idx, "ratio.grid", "dim", "the smoothing ratio is one-dimensional")?;
            check(c.band.is_none(), idx, t, "band", "the smoothing family fixes its band to [1, 2]")?;
        }
        kind => {
            let w = c.weight.as_ref().ok_or_else(|| idx.error(t, None, "missing table [ratio.weight]"))?;
            validate_weight(w, "ratio.weight", idx)?;
            if kind == RatioKind::WaveFractional {
                let r = c.r.ok_or_else(|| idx.error(t, None, "missing key `r` for kind = \"wave-fractional\""))?;
                check(r.is_finite() && r > 1.0, idx, t, "r", format!("must be > 1, got {r}"))?;
            } else {
                check(c.r.is_none(), idx, t, "r", "only used with kind = \"wave-fractional\"")?;
            }
            if kind != RatioKind::Homogeneous {
                let params = EstimateParams::new(c.grid.dim, c.gamma, c.s, c.p, c.gamma)
                    .map_err(|e| idx.error(t, None, e.to_string()))?;
                check(
                    inhomogeneous_admissible(&params, inhomogeneous_kind(&c)),
                    idx,
                    t,
                    "p",
                    format!(
                        "(dim, gamma, s, p) = ({}, {}, {}, {}) is outside the range of the {kind:?} estimate",
                        c.grid.dim, c.gamma, c.s, c.p
                    ),
                )?;
            }
        }
    }
    Ok(c)
}

fn validate_freq_local(c: FreqLocalConfig, idx: &LineIndex) -> Result<FreqLocalConfig, ConfigError> {
    let t = "freq-local";
    validate_grid(&c.grid, t, idx)?;
    validate_weight(&c.weight, "freq-local.weight", idx)?;
    validate_exponent(c.p, idx, t)?;
    check(!c.k.is_empty(), idx, t, "k", "at least one band is required")?;
    check(
        c.width > 0.0 && c.center - c.width >= 0.5 && c.center + c.width <= 2.0,
        idx,
        t,
        "width",
        "the profile spectrum (center - width, center + width) must lie in [1/2, 2]",
    )?;
    check(c.gamma.is_finite() && c.gamma >= 1.0, idx, t, "gamma", format!("must be >= 1, got {}", c.gamma))?;
    let params = EstimateParams::new(c.grid.dim, c.gamma, c.s, c.p, c.alpha)
        .map_err(|e| idx.error(t, None, e.to_string()))?;
    check(
        frequency_localized_admissible(&params),
        idx,
        t,
        "alpha",
        format!("alpha = {} and p = {} are outside the frequency-localized range", c.alpha, c.p),
    )?;
    Ok(c)
}

fn validate_sharpness(c: SharpnessConfig, idx: &LineIndex) -> Result<SharpnessConfig, ConfigError> {
    let t = "sharpness";
    validate_exponent(c.p, idx, t)?;
    check(c.dim >= 1, idx, t, "dim", "must be >= 1")?;
    check(c.m.len() >= 3, idx, t, "m", format!("the slope fit needs at least 3 offsets, got {}", c.m.len()))?;
    check(
        c.m.iter().all(|m| (8.0..=64.0).contains(m)),
        idx,
        t,
        "m",
        "offsets must lie in [8, 64]",
    )?;
    check(c.s.is_finite() && c.s > -1.0, idx, t, "s", format!("must be > -1, got {}", c.s))?;
    Ok(c)
}

fn validate_mcnorm(c: McnormConfig, idx: &LineIndex) -> Result<McnormConfig, ConfigError> {
    let t = "mcnorm";
    validate_grid(&c.grid, t, idx)?;
    validate_exponent(c.p, idx, t)?;
    check(c.alpha.is_finite(), idx, t, "alpha", "must be finite")?;
    check(c.gamma.is_finite() && c.gamma > 0.0, idx, t, "gamma", "must be > 0")?;
    check(!c.weights.is_empty(), idx, t, "weights", "at least one [[mcnorm.weights]] entry is required")?;
    for w in &c.weights {
        validate_weight(w, "mcnorm.weights", idx)?;
    }
    if let Some(q) = c.maximal_q {
        check(q.is_finite() && q > 1.0, idx, t, "maximal_q", format!("must be > 1, got {q}"))?;
    }
    Ok(c)
}

fn validate_solve(c: SolveConfig, table: &str, idx: &LineIndex) -> Result<SolveConfig, ConfigError> {
    validate_grid(&c.grid, table, idx)?;
    validate_seeds(&c.seeds, table, idx)?;
    validate_exponent(c.p, idx, table)?;
    if table == "kdv" {
        check(c.kind.is_none(), idx, table, "kind", "the kdv experiment always uses the Airy kernel")?;
        check(c.gamma.is_none(), idx, table, "gamma", "fixed to 2k+1")?;
        let k = c.k.ok_or_else(|| idx.error(table, None, "missing key `k`"))?;
        check(k >= 1, idx, table, "k", "must be >= 1")?;
        check(c.grid.dim == 1, idx, "kdv.grid", "dim", "the Airy flows are one-dimensional")?;
    } else {
        check(c.k.is_none(), idx, table, "k", "only used by the kdv experiment")?;
        let gamma = c.gamma.unwrap_or(2.0);
        let min = if c.kind == Some(SolveKind::Wave) { 2.0 } else { 1.0 };
        check(gamma.is_finite() && gamma >= min, idx, table, "gamma", format!("must be >= {min}, got {gamma}"))?;
    }
    check(c.grid.time_points % 2 == 1, idx, &format!("{table}.grid"), "time_points", "must be odd so that t = 0 is a node")?;
    check(c.bandwidth > 0.0, idx, table, "bandwidth", "must be > 0")?;
    check(c.potential.is_finite(), idx, table, "potential", "must be finite")?;
    check(c.forcing.is_finite(), idx, table, "forcing", "must be finite")?;
    check(
        c.contraction_target > 0.0 && c.contraction_target < 1.0,
        idx,
        table,
        "contraction_target",
        "must lie in (0, 1)",
    )?;
    check(c.tol > 0.0, idx, table, "tol", "must be > 0")?;
    check(c.max_iter >= 1, idx, table, "max_iter", "must be >= 1")?;
    Ok(c)
}

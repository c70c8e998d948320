//! Orchestration of the seven experiments. Every experiment turns a
//! validated config section into a [`Table`] whose rows are sorted by the
//! sweep key, plus a few summary values for the run manifest.

use displab_core::estimates::{
    counterexample_lower_bound, dyadic_rescale, frequency_localized_sweep, homogeneous_ratio_with,
    inhomogeneous_ratio_with, kdv_lattice, region_lattice, scaling_homogeneity_check,
    sharpness_experiment, smoothing_family, smoothing_ratio, bump, CounterexampleSpec,
    InhomogeneousKind, RatioReport, Status,
};
use displab_core::norms::{
    a2_constant, maximal_function, mc_norm_with, sobolev_norm, CenterStride, McOptions,
};
use displab_core::wellposed::{
    mass_drift, picard_solve, rescale_small, wellposedness_inequalities, DuhamelKind,
    PicardOptions, Potential,
};
use displab_core::{
    seeded_random_field, EstimateParams, Field, GridSpec, SpaceTimeField, SpectralBand, Spectrum,
    Weight,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::config::{
    Config, Equation, FreqLocalConfig, McnormConfig, RatioConfig, RatioKind, RegionConfig,
    Section, SharpnessConfig, SolveConfig, SolveKind, Stride, WeightConfig,
};
use crate::csv_out::{Cell, Table};

/// A failure inside the numerical core, tagged with the operation that
/// raised it.
#[derive(Debug, Error)]
#[error("numerical failure in {operation}: {source}")]
pub struct NumericalError {
    pub operation: &'static str,
    #[source]
    pub source: displab_core::Error,
}

type Result<T> = std::result::Result<T, NumericalError>;

fn during(operation: &'static str) -> impl Fn(displab_core::Error) -> NumericalError {
    move |source| NumericalError { operation, source }
}

/// The rows of one run and the summary values recorded in its manifest.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub summary: Map<String, Value>,
}

pub fn run(config: &Config) -> Result<Outcome> {
    match &config.section {
        Section::Region(c) => region(c),
        Section::Ratio(c) => ratio(c),
        Section::FreqLocal(c) => freq_local(c),
        Section::Sharpness(c) => sharpness(c),
        Section::Mcnorm(c) => mcnorm(c),
        Section::Solve(c) => solve(c, false),
        Section::Kdv(c) => solve(c, true),
    }
}

fn options(stride: Stride) -> McOptions {
    McOptions {
        stride: match stride {
            Stride::Adaptive => CenterStride::Adaptive,
            Stride::Full => CenterStride::Full,
        },
    }
}

fn sorted_seeds(seeds: &[u64]) -> Vec<u64> {
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();
    seeds
}

fn radius2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Samples a configured weight on `grid`.
pub fn build_weight(grid: GridSpec, w: &WeightConfig) -> displab_core::Result<Weight> {
    match *w {
        WeightConfig::Constant { value } => Weight::constant(grid, value),
        WeightConfig::Gaussian { width, duration, amplitude, floor } => Weight::from_fn(grid, |x, t| {
            floor + amplitude * (-radius2(x) / (width * width) - t * t / (duration * duration)).exp()
        }),
        WeightConfig::ParabolicPower { exponent, floor } => {
            Weight::from_fn_singular(grid, |x, t| (radius2(x) + t.abs()).powf(exponent) + floor)
        }
        WeightConfig::Box { half_width, half_time, inside, outside } => Weight::from_fn(grid, |x, t| {
            if t.abs() < half_time && x.iter().all(|v| v.abs() < half_width) {
                inside
            } else {
                outside
            }
        }),
    }
}

/// `F(x, t) = f(x) exp(-(2t/T)^2)`.
fn gaussian_in_time(f: &Field, amplitude: f64, width: f64) -> displab_core::Result<SpaceTimeField> {
    let g = *f.grid();
    let profile: Vec<f64> = g
        .times()
        .into_iter()
        .flat_map(|t| std::iter::repeat_n(amplitude * (-(t / width).powi(2)).exp(), g.spatial_len()))
        .collect();
    Ok(SpaceTimeField::from_slices(g, vec![f.clone(); g.time_points()])?.mul_real(&profile))
}

// ------------------------------------------------------------------ region

fn region(c: &RegionConfig) -> Result<Outcome> {
    let mut points = match c.equation {
        Equation::Fractional => region_lattice(c.gamma.unwrap_or(2.0), c.dim.unwrap_or(1), c.size),
        Equation::Kdv => kdv_lattice(c.k.unwrap_or(1), c.size),
    }
    .map_err(during("region classification"))?;
    points.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.inv_p.total_cmp(&b.inv_p)));
    let mut table = Table::new(["s", "inv_p", "status", "source"]);
    let mut counts = [0usize; 3];
    for p in &points {
        counts[match p.verdict.status {
            Status::ProvenTrue => 0,
            Status::ProvenFalse => 1,
            Status::Open => 2,
        }] += 1;
        table.push(vec![
            Cell::Float(p.s),
            Cell::Float(p.inv_p),
            Cell::Int(i64::from(p.verdict.status.code())),
            Cell::text(p.verdict.source.label()),
        ]);
    }
    let summary = json!({ "proven_true": counts[0], "proven_false": counts[1], "open": counts[2] });
    Ok(Outcome { table, summary: into_map(summary) })
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

const RATIO_COLUMNS: [&str; 4] = ["lhs", "weight_norm", "data_norm", "ratio"];

fn ratio_cells(r: &RatioReport) -> Vec<Cell> {
    vec![
        Cell::Float(r.lhs),
        Cell::Float(r.weight_norm),
        Cell::Float(r.data_norm),
        Cell::Float(r.ratio),
    ]
}

fn ratio_summary(ratios: &[f64]) -> Map<String, Value> {
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    into_map(json!({ "max_ratio": max, "min_ratio": min, "spread": max / min }))
}

fn keyed_header(key: &str) -> Table {
    Table::new(std::iter::once(key).chain(RATIO_COLUMNS))
}

// ------------------------------------------------------------------- ratio

fn ratio(c: &RatioConfig) -> Result<Outcome> {
    let grid = c.grid.spec().map_err(during("grid construction"))?;
    let seeds = sorted_seeds(&c.seeds);
    let band = match c.band {
        Some([lo, hi]) => SpectralBand::Annulus { lo, hi },
        None => SpectralBand::Full,
    };
    let opts = options(c.stride);
    let weight = match &c.weight {
        Some(w) => Some(build_weight(grid, w).map_err(during("weight sampling"))?),
        None => None,
    };
    let rows: Vec<Vec<Cell>> = seeds
        .par_iter()
        .map(|&seed| -> Result<Vec<Cell>> {
            let seed_cell = Cell::Int(seed as i64);
            if c.kind == RatioKind::Smoothing {
                let f = smoothing_family(&grid, seed).map_err(during("smoothing family"))?;
                let ratio = smoothing_ratio(&f, c.x0, &grid).map_err(during("smoothing ratio"))?;
                let data = sobolev_norm(&f, -0.5);
                return Ok(vec![seed_cell, Cell::Float(ratio * data), Cell::Empty, Cell::Float(data), Cell::Float(ratio)]);
            }
            let w = weight.as_ref().expect("validated: non-smoothing kinds carry a weight");
            let f = seeded_random_field(&grid, seed, &band).map_err(during("seeded data"))?;
            let report = if c.kind == RatioKind::Homogeneous {
                let params = EstimateParams::homogeneous(grid.dim(), c.gamma, c.s, c.p)
                    .map_err(during("estimate parameters"))?;
                homogeneous_ratio_with(&f, w, &params, opts).map_err(during("homogeneous ratio"))?
            } else {
                let params = EstimateParams::new(grid.dim(), c.gamma, c.s, c.p, c.gamma)
                    .map_err(during("estimate parameters"))?;
                let forcing = gaussian_in_time(&f, 1.0, grid.half_time() / 2.0)
                    .map_err(during("forcing construction"))?;
                inhomogeneous_ratio_with(&forcing, w, &params, inhomogeneous_kind(c), opts)
                    .map_err(during("inhomogeneous ratio"))?
            };
            Ok(std::iter::once(seed_cell).chain(ratio_cells(&report)).collect())
        })
        .collect::<Result<_>>()?;
    let mut table = keyed_header("seed");
    let ratios: Vec<f64> = rows
        .iter()
        .filter_map(|r| match r[4] {
            Cell::Float(v) => Some(v),
            _ => None,
        })
        .collect();
    table.rows = rows;
    Ok(Outcome { table, summary: ratio_summary(&ratios) })
}

pub(crate) fn inhomogeneous_kind(c: &RatioConfig) -> InhomogeneousKind {
    match c.kind {
        RatioKind::Wave => InhomogeneousKind::Wave,
        RatioKind::WaveFractional => InhomogeneousKind::WaveFractional { r: c.r.unwrap_or(2.0) },
        _ => InhomogeneousKind::Schrodinger,
    }
}

// -------------------------------------------------------------- freq-local

fn freq_local(c: &FreqLocalConfig) -> Result<Outcome> {
    let grid = c.grid.spec().map_err(during("grid construction"))?;
    let w = build_weight(grid, &c.weight).map_err(during("weight sampling"))?;
    let params = EstimateParams::new(grid.dim(), c.gamma, c.s, c.p, c.alpha)
        .map_err(during("estimate parameters"))?;
    let mut ks = c.k.clone();
    ks.sort_unstable();
    ks.dedup();
    // one radial profile, rescaled into band k and L^2-normalized across k
    let pieces: Vec<(i32, Field)> = ks
        .iter()
        .map(|&k| {
            let scale = 2f64.powi(k);
            let norm = scale.powf(grid.dim() as f64 / 2.0);
            let f = Spectrum::from_fn(grid, |xi| {
                let r = radius2(xi).sqrt();
                Complex64::new(bump((r / scale - c.center) / c.width) / norm, 0.0)
            })?
            .inverse()?;
            Ok((k, f))
        })
        .collect::<displab_core::Result<_>>()
        .map_err(during("band-limited data"))?;
    let reports = frequency_localized_sweep(&pieces, &w, &params, options(c.stride))
        .map_err(during("frequency-localized ratio"))?;
    let mut table = keyed_header("k");
    for (k, r) in ks.iter().zip(&reports) {
        table.push(std::iter::once(Cell::Int(i64::from(*k))).chain(ratio_cells(r)).collect());
    }
    let ratios: Vec<f64> = reports.iter().map(|r| r.ratio).collect();
    Ok(Outcome { table, summary: ratio_summary(&ratios) })
}

// --------------------------------------------------------------- sharpness

fn sharpness(c: &SharpnessConfig) -> Result<Outcome> {
    let mut ms = c.m.clone();
    ms.sort_by(f64::total_cmp);
    ms.dedup();
    let report = sharpness_experiment(c.s, c.p, c.dim, &ms).map_err(during("sharpness sweep"))?;
    let bounds: Vec<f64> = ms
        .par_iter()
        .map(|&m| {
            let spec = CounterexampleSpec::standard(m, c.dim)?;
            let values = counterexample_lower_bound(&spec, c.s)?;
            Ok(values.into_iter().fold(f64::INFINITY, f64::min))
        })
        .collect::<displab_core::Result<_>>()
        .map_err(during("counterexample lower bound"))?;
    let mut table = Table::new(["m", "lhs", "mc_norm", "data_norm", "ratio", "lower_bound"]);
    for (row, bound) in report.rows.iter().zip(&bounds) {
        table.push(vec![
            Cell::Float(row.m),
            Cell::Float(row.lhs),
            Cell::Float(row.mc_norm),
            Cell::Float(row.data_norm),
            Cell::Float(row.ratio),
            Cell::Float(*bound),
        ]);
    }
    Ok(Outcome { table, summary: into_map(json!({ "slope": report.slope })) })
}

// ------------------------------------------------------------------ mcnorm

fn mcnorm(c: &McnormConfig) -> Result<Outcome> {
    let grid = c.grid.spec().map_err(during("grid construction"))?;
    let opts = options(c.stride);
    let mut header: Vec<String> = vec!["index".into(), "kind".into(), "value".into()];
    header.extend((1..=grid.dim()).map(|i| format!("center_{i}")));
    header.extend(
        ["time", "radius", "duration", "maximal_ratio", "a2_max", "homogeneity_error"].map(String::from),
    );
    let mut table = Table::new(header);
    for (index, config) in c.weights.iter().enumerate() {
        let w = build_weight(grid, config).map_err(during("weight sampling"))?;
        let result = mc_norm_with(&w, c.alpha, c.p, c.gamma, opts).map_err(during("mc norm"))?;
        let (maximal_ratio, a2_max) = match c.maximal_q {
            Some(q) => {
                let (ratio, a2) = maximal_diagnostics(&w, q, c, opts, result.value)?;
                (Some(ratio), a2)
            }
            None => (None, None),
        };
        let homogeneity = match c.homogeneity_m {
            Some(m) => {
                let rescaled = dyadic_rescale(&w, m, c.gamma).map_err(during("dyadic rescale"))?;
                Some(
                    scaling_homogeneity_check(&w, &rescaled, m, c.alpha, c.p, c.gamma)
                        .map_err(during("homogeneity check"))?,
                )
            }
            None => None,
        };
        let mut row = vec![
            Cell::Int(index as i64),
            Cell::text(config.label()),
            Cell::Float(result.value),
        ];
        row.extend(result.witness.center.iter().map(|&x| Cell::Float(x)));
        row.extend([
            Cell::Float(result.witness.time),
            Cell::Float(result.witness.radius),
            Cell::Float(result.witness.duration),
            Cell::opt_float(maximal_ratio),
            Cell::opt_float(a2_max),
            Cell::opt_float(homogeneity),
        ]);
        table.push(row);
    }
    let max_value = table
        .rows
        .iter()
        .filter_map(|r| match r[2] {
            Cell::Float(v) => Some(v),
            _ => None,
        })
        .fold(0.0, f64::max);
    Ok(Outcome { table, summary: into_map(json!({ "max_value": max_value })) })
}

/// `||M_q w|| / ||w||`, and the largest `A_2` constant over the time slices
/// of `M_q w` (slices where `M_q w` vanishes identically are skipped; an
/// empty cell means every slice vanished).
fn maximal_diagnostics(
    w: &Weight,
    q: f64,
    c: &McnormConfig,
    opts: McOptions,
    base: f64,
) -> Result<(f64, Option<f64>)> {
    let maximal = maximal_function(w, q).map_err(during("maximal function"))?;
    let value = mc_norm_with(&maximal, c.alpha, c.p, c.gamma, opts).map_err(during("mc norm"))?.value;
    let a2 = (0..w.grid().time_points())
        .map(|m| maximal.slice(m))
        .filter(|s| s.values().iter().any(|&v| v > 0.0))
        .map(|s| a2_constant(&s))
        .collect::<displab_core::Result<Vec<f64>>>()
        .map_err(during("a2 constant"))?;
    let a2_max = a2.into_iter().reduce(f64::max);
    Ok((value / base, a2_max))
}

// ------------------------------------------------------------- solve / kdv

const SOLVE_HEADER: [&str; 11] = [
    "seed", "scale", "iterations", "converged", "residual", "max_contraction", "lhs1", "rhs1", "lhs2",
    "rhs2", "mass_drift",
];

fn solve(c: &SolveConfig, airy: bool) -> Result<Outcome> {
    let grid = c.grid.spec().map_err(during("grid construction"))?;
    let (kind, gamma) = if airy {
        let k = c.k.unwrap_or(1);
        (DuhamelKind::Kdv(k), f64::from(2 * k + 1))
    } else {
        match c.kind.unwrap_or_default() {
            SolveKind::Schrodinger => (DuhamelKind::Schrodinger, c.gamma.unwrap_or(2.0)),
            SolveKind::Wave => (DuhamelKind::Wave, c.gamma.unwrap_or(2.0)),
        }
    };
    let band = SpectralBand::Annulus { lo: 0.0, hi: c.bandwidth };
    let amplitude = c.potential;
    let potential = Potential::from_fn(grid, |x, t| {
        amplitude * (0.2 + (-radius2(x)).exp()) * (1.0 + 0.3 * t.sin())
    })
    .map_err(during("potential sampling"))?;
    let opts = PicardOptions { tol: c.tol, max_iter: c.max_iter };
    let rows: Vec<Vec<Cell>> = sorted_seeds(&c.seeds)
        .par_iter()
        .map(|&seed| -> Result<Vec<Cell>> {
            let f = seeded_random_field(&grid, seed, &band).map_err(during("seeded data"))?;
            let velocity = match kind {
                DuhamelKind::Wave => Some(
                    seeded_random_field(&grid, seed.wrapping_add(1 << 32), &band)
                        .map_err(during("seeded data"))?,
                ),
                _ => None,
            };
            let forcing = if c.forcing == 0.0 {
                SpaceTimeField::zeros(grid)
            } else {
                let h = seeded_random_field(&grid, seed.wrapping_add(2 << 32), &band)
                    .map_err(during("seeded data"))?;
                gaussian_in_time(&h, c.forcing, 1.0).map_err(during("forcing construction"))?
            };
            let (problem, scale) =
                rescale_small(&f, velocity.as_ref(), &potential, &forcing, gamma, kind, c.contraction_target)
                    .map_err(during("potential rescaling"))?;
            let (u, report) = picard_solve(&problem, opts).map_err(during("picard iteration"))?;
            let scaled = potential.scale(scale);
            let ineq = wellposedness_inequalities(&u, &f, &forcing, &scaled, gamma, c.p)
                .map_err(during("well-posedness inequalities"))?;
            let drift = if kind == DuhamelKind::Schrodinger && c.forcing == 0.0 {
                Some(mass_drift(&u, &scaled).map_err(during("mass drift"))?)
            } else {
                None
            };
            let contraction = report.contraction_estimates.iter().copied().reduce(f64::max);
            Ok(vec![
                Cell::Int(seed as i64),
                Cell::Float(scale),
                Cell::Int(report.iterations as i64),
                Cell::Int(i64::from(report.converged)),
                Cell::Float(report.residual),
                Cell::opt_float(contraction),
                Cell::Float(ineq.lhs1),
                Cell::Float(ineq.rhs1),
                Cell::Float(ineq.lhs2),
                Cell::Float(ineq.rhs2),
                Cell::opt_float(drift),
            ])
        })
        .collect::<Result<_>>()?;
    let converged = rows.iter().all(|r| r[3] == Cell::Int(1));
    let max_residual = rows
        .iter()
        .filter_map(|r| match r[4] {
            Cell::Float(v) => Some(v),
            _ => None,
        })
        .fold(0.0, f64::max);
    let mut table = Table::new(SOLVE_HEADER);
    table.rows = rows;
    Ok(Outcome {
        table,
        summary: into_map(json!({ "gamma": gamma, "all_converged": converged, "max_residual": max_residual })),
    })
}

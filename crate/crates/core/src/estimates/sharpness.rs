//! Wave-packet counterexample: data concentrated at frequency `M` and the
//! indicator of the tilted slab it travels along.
//!
//! With `f^(xi) = phi(xi_1 - M) prod_{k>1} phi(xi_k)` the solution
//! `e^{it Delta} f` stays of size one on
//! `B = { |x_1 - 2Mt| <= 1/(4n), |x_k| <= 1/(4n), |t| <= 1/(4n) }`,
//! while the weight norm of `chi_B` decays with `M`; the ratio of the two
//! sides therefore grows along the family wherever the estimate fails.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fit::log_log_slope;
use crate::grid::{EstimateParams, Field, GridSpec, Weight};
use crate::spectral::{fractional_derivative, homogeneous_symbol, Spectrum};

use super::ratios::homogeneous_ratio;

/// Frequency offset, dimension and a grid resolving the slab and the
/// oscillation `e^{i M x_1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleSpec {
    pub m: f64,
    pub n: usize,
    pub grid: GridSpec,
}

impl CounterexampleSpec {
    /// Checks `L >= M/(2n) + 1`, `N >= 4 M L / pi` and `T >= 1/(4n)`.
    pub fn new(m: f64, n: usize, grid: GridSpec) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParameter(format!("offset M must be positive, got {m}")));
        }
        if n == 0 || grid.dim() != n {
            return Err(Error::InvalidGrid(format!(
                "counterexample grid must be {n}-dimensional"
            )));
        }
        let nf = n as f64;
        let l = grid.half_width();
        if l < m / (2.0 * nf) + 1.0 {
            return Err(Error::InvalidGrid(format!(
                "half-width {l} does not cover the slab (need >= {})",
                m / (2.0 * nf) + 1.0
            )));
        }
        if (grid.points() as f64) < 4.0 * m * l / std::f64::consts::PI {
            return Err(Error::InvalidGrid(format!(
                "{} points per axis do not resolve frequency {m} (need >= {:.1})",
                grid.points(),
                4.0 * m * l / std::f64::consts::PI
            )));
        }
        if grid.half_time() < 1.0 / (4.0 * nf) {
            return Err(Error::InvalidGrid(format!(
                "half-time {} is shorter than the slab duration {}",
                grid.half_time(),
                1.0 / (4.0 * nf)
            )));
        }
        Ok(Self { m, n, grid })
    }

    /// Standard grid: `L = M/(2n) + 1`, `N` the next power of two above
    /// `8 M L / pi` (twice the resolution bound, so the slab spans at least
    /// six nodes), `T = 1/(2n)` and time step `1/(16 M)` so the slab moves an
    /// eighth of its width per step.
    pub fn standard(m: f64, n: usize) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "need M > 0 and n >= 1, got M = {m}, n = {n}"
            )));
        }
        let nf = n as f64;
        let l = m / (2.0 * nf) + 1.0;
        let points = ((8.0 * m * l / std::f64::consts::PI).ceil() as usize)
            .next_power_of_two()
            .max(8);
        let t = 1.0 / (2.0 * nf);
        let steps = (2.0 * t * 16.0 * m).ceil() as usize;
        let time_points = steps.max(128) + 1;
        Self::new(m, n, GridSpec::new(n, points, l, time_points, t)?)
    }

    /// Half-width `1/(4n)` of the slab in every direction.
    pub fn slab_radius(&self) -> f64 {
        1.0 / (4.0 * self.n as f64)
    }

    /// Whether `(x, t)` lies in the slab `B`. Every coordinate interval is
    /// taken half-open, `[-h, h)`, so that nodes on the boundary are not
    /// counted twice and the node count is an unbiased quadrature of `|B|`.
    pub fn in_slab(&self, x: &[f64], t: f64) -> bool {
        let h = self.slab_radius();
        let inside = |v: f64| (-h..h).contains(&v);
        inside(t) && inside(x[0] - 2.0 * self.m * t) && x[1..].iter().all(|&v| inside(v))
    }
}

/// `exp(-1/(1 - xi^2))` on `(-1, 1)`, zero elsewhere.
pub fn bump(xi: f64) -> f64 {
    if xi.abs() < 1.0 {
        (-1.0 / (1.0 - xi * xi)).exp()
    } else {
        0.0
    }
}

fn packet_spectrum(spec: &CounterexampleSpec) -> Result<Spectrum> {
    let m = spec.m;
    Spectrum::from_fn(spec.grid, |xi| {
        let amp = bump(xi[0] - m) * xi[1..].iter().map(|&v| bump(v)).product::<f64>();
        Complex64::new(amp, 0.0)
    })
}

/// The data `f` and the exact grid indicator of the slab.
pub fn build_counterexample(spec: &CounterexampleSpec) -> Result<(Field, Weight)> {
    let f = packet_spectrum(spec)?.inverse()?;
    let w = Weight::from_fn(spec.grid, |x, t| if spec.in_slab(x, t) { 1.0 } else { 0.0 })?;
    Ok((f, w))
}

/// Sample points `(t, x_1 - 2Mt)` inside the slab used by the pointwise
/// lower bound.
pub const PROBE_POINTS: [(f64, f64); 5] = [
    (-0.2, 0.1),
    (-0.1, -0.1),
    (0.0, 0.0),
    (0.1, 0.05),
    (0.2, -0.05),
];

/// `M^s |(|nabla|^{-s} e^{it Delta} f)(x, t)|` at the probe points of the
/// slab (offsets scaled by `4n` times the slab radius for `n > 1`).
pub fn counterexample_lower_bound(spec: &CounterexampleSpec, s: f64) -> Result<Vec<f64>> {
    let spectrum = packet_spectrum(spec)?;
    let g = spec.grid;
    let scale = 4.0 * spec.slab_radius();
    PROBE_POINTS
        .iter()
        .map(|&(t, offset)| {
            let (t, offset) = (t * scale, offset * scale);
            let coefficients = spectrum
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let xi = g.frequency(k);
                    let r2: f64 = xi.iter().map(|v| v * v).sum();
                    c * homogeneous_symbol(r2.sqrt(), -s) * Complex64::from_polar(1.0, -t * r2)
                })
                .collect();
            let mut x = vec![0.0; spec.n];
            x[0] = 2.0 * spec.m * t + offset;
            let value = Spectrum::new(g, coefficients)?.evaluate_at(&x).norm();
            Ok(value * spec.m.powf(s))
        })
        .collect()
}

/// One offset of the sharpness sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessRow {
    pub m: f64,
    pub lhs: f64,
    pub mc_norm: f64,
    pub data_norm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessReport {
    pub rows: Vec<SharpnessRow>,
    /// Least-squares slope of `log(ratio^2)` against `log M`.
    pub slope: f64,
}

/// Ratio `||  |nabla|^{-s} e^{it Delta} f ||_{L^2(w)} / (||w||^{1/2} ||f||_{L^2})`
/// with `alpha = 2s + 2` along the counterexample family.
pub fn sharpness_experiment(s: f64, p: f64, n: usize, m_list: &[f64]) -> Result<SharpnessReport> {
    if m_list.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "sharpness fit needs at least 3 offsets, got {}",
            m_list.len()
        )));
    }
    if let Some(m) = m_list.iter().find(|m| !(8.0..=64.0).contains(*m)) {
        return Err(Error::InvalidParameter(format!("offset {m} outside [8, 64]")));
    }
    let params = EstimateParams::homogeneous(n, 2.0, s, p)?;
    let rows: Vec<SharpnessRow> = m_list
        .par_iter()
        .map(|&m| {
            let spec = CounterexampleSpec::standard(m, n)?;
            let (f, w) = build_counterexample(&spec)?;
            let g = fractional_derivative(&f, -s)?;
            let rep = homogeneous_ratio(&g, &w, &params)?;
            Ok(SharpnessRow {
                m,
                lhs: rep.lhs,
                mc_norm: rep.weight_norm * rep.weight_norm,
                data_norm: rep.data_norm,
                ratio: rep.ratio,
            })
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.m).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.ratio * r.ratio).collect();
    Ok(SharpnessReport {
        slope: log_log_slope(&xs, &ys),
        rows,
    })
}

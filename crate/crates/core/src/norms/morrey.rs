//! Morrey-Campanato type norms of space-time weights.
//!
//! All suprema run over the dyadic radii `r = dx * 2^j <= 2L`, over centres
//! placed on grid nodes and over boxes `Q_r(x) x [t - r^g/2, t + r^g/2]`
//! (side `r`, centred at `x`, periodic in space, clipped to `[-T, T]` in
//! time). The normalization always uses the nominal box measure
//! `r^{n+g}` even where the time interval is clipped.

use rayon::prelude::*;

use super::cumulative::{Axis, BoxIntegrator, TermList};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, SpatialWeight, Weight};

/// Which node centres are scanned for each radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CenterStride {
    /// Spatial stride `max(1, floor(r / 4dx))` nodes, time stride
    /// `max(1, floor(l / 4dt))` nodes, where `l` is the box duration.
    #[default]
    Adaptive,
    /// Every node is a centre.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct McOptions {
    pub stride: CenterStride,
}

impl McOptions {
    pub fn full() -> Self {
        Self {
            stride: CenterStride::Full,
        }
    }

    fn space_stride(&self, grid: &GridSpec, r: f64) -> usize {
        match self.stride {
            CenterStride::Full => 1,
            CenterStride::Adaptive => ((r / (4.0 * grid.dx())).floor() as usize).max(1),
        }
    }

    fn time_stride(&self, grid: &GridSpec, l: f64) -> usize {
        match self.stride {
            CenterStride::Full => 1,
            CenterStride::Adaptive => ((l / (4.0 * grid.dt())).floor() as usize).max(1),
        }
    }
}

/// Box attaining the supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct McWitness {
    pub center: Vec<f64>,
    pub time: f64,
    pub radius: f64,
    /// Duration of the time interval (`r^g` for the one-parameter norm).
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MCResult {
    pub value: f64,
    pub witness: McWitness,
}

/// Dyadic radii `dx * 2^j` up to the period `2L`.
pub fn dyadic_radii(grid: &GridSpec) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = grid.dx();
    while r <= 2.0 * grid.half_width() * (1.0 + 1e-12) {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// Dyadic durations `dt * 2^j` up to the window length `2T`.
pub fn dyadic_durations(grid: &GridSpec) -> Vec<f64> {
    let mut out = Vec::new();
    let mut l = grid.dt();
    while l <= 2.0 * grid.half_time() * (1.0 + 1e-12) {
        out.push(l);
        l *= 2.0;
    }
    out
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!("exponent p must be >= 1, got {p}")));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
    }
    Ok(())
}

/// One family member of the scan: a spatial side, an optional duration and
/// the prefactor `r^a l^b`.
#[derive(Debug, Clone, Copy)]
struct Scale {
    radius: f64,
    duration: Option<f64>,
    prefactor: f64,
}

#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    key: (usize, usize, usize),
}

impl Best {
    fn better(self, other: Best) -> Best {
        // larger value wins; ties go to the smallest (scale, time, space) key
        if other.value > self.value || (other.value == self.value && other.key < self.key) {
            other
        } else {
            self
        }
    }
}

fn strided(len: usize, stride: usize) -> Vec<usize> {
    (0..len).step_by(stride).collect()
}

fn spatial_terms(axis: &Axis, grid: &GridSpec, r: f64) -> Vec<TermList> {
    (0..grid.points())
        .map(|i| {
            let x = grid.coordinate(i);
            axis.interval_terms(x - 0.5 * r, x + 0.5 * r)
        })
        .collect()
}

/// Scans every scale and centre; `integ` has the time axis first when
/// `with_time` is set, followed by the `n` spatial axes.
fn scan(
    integ: &BoxIntegrator,
    grid: &GridSpec,
    with_time: bool,
    scales: &[Scale],
    p: f64,
    opts: McOptions,
) -> Best {
    let n = grid.dim();
    let space_axis = integ.axis(usize::from(with_time)).clone();
    let tasks: Vec<(usize, usize)> = scales
        .iter()
        .enumerate()
        .flat_map(|(si, sc)| {
            let times = match sc.duration {
                Some(l) if with_time => strided(grid.time_points(), opts.time_stride(grid, l)),
                _ => vec![0],
            };
            times.into_iter().map(move |m| (si, m))
        })
        .collect();
    // spatial term lists are shared by all tasks of the same scale
    let per_scale: Vec<Vec<TermList>> = scales
        .par_iter()
        .map(|sc| spatial_terms(&space_axis, grid, sc.radius))
        .collect();
    let init = Best {
        value: f64::NEG_INFINITY,
        key: (usize::MAX, usize::MAX, usize::MAX),
    };
    tasks
        .par_iter()
        .map(|&(si, m)| {
            let sc = scales[si];
            let xterms = &per_scale[si];
            let time_terms = sc.duration.filter(|_| with_time).map(|l| {
                let t = grid.time(m);
                integ.axis(0).interval_terms(t - 0.5 * l, t + 0.5 * l)
            });
            let measure = sc.radius.powi(n as i32) * sc.duration.unwrap_or(1.0);
            let stride = opts.space_stride(grid, sc.radius);
            let axis_centres = strided(grid.points(), stride);
            let mut idx = vec![0usize; n];
            let mut best = init;
            let mut terms: Vec<&TermList> = Vec::with_capacity(n + 1);
            loop {
                terms.clear();
                if let Some(tt) = &time_terms {
                    terms.push(tt);
                }
                for &k in &idx {
                    terms.push(&xterms[axis_centres[k]]);
                }
                let integral = if time_terms.as_ref().is_some_and(TermList::is_empty) {
                    0.0
                } else {
                    integ.integrate(&terms).max(0.0)
                };
                let value = sc.prefactor * (integral / measure).powf(1.0 / p);
                let flat = idx
                    .iter()
                    .fold(0usize, |acc, &k| acc * grid.points() + axis_centres[k]);
                best = best.better(Best {
                    value,
                    key: (si, m, flat),
                });
                // advance the multi-index over strided centres
                let mut a = n;
                loop {
                    if a == 0 {
                        return best;
                    }
                    a -= 1;
                    idx[a] += 1;
                    if idx[a] < axis_centres.len() {
                        break;
                    }
                    idx[a] = 0;
                }
            }
        })
        .reduce(|| init, Best::better)
}

fn powered(values: &[f64], p: f64) -> Vec<f64> {
    values.iter().map(|v| v.powf(p)).collect()
}

fn space_time_integrator(w: &Weight, p: f64) -> BoxIntegrator {
    let g = w.grid();
    let mut axes = vec![Axis::time(g)];
    axes.extend((0..g.dim()).map(|_| Axis::spatial(g)));
    BoxIntegrator::new(axes, &powered(w.values(), p))
}

fn spatial_integrator(w: &SpatialWeight, p: f64) -> BoxIntegrator {
    let g = w.grid();
    let axes = (0..g.dim()).map(|_| Axis::spatial(g)).collect();
    BoxIntegrator::new(axes, &powered(w.values(), p))
}

/// `sup r^a ( r^{-(n+g)} \int_{Q_r x I_r} w^p )^{1/p}` with `|I_r| = r^g`.
pub fn mc_norm(w: &Weight, alpha: f64, p: f64, gamma: f64) -> Result<MCResult> {
    mc_norm_with(w, alpha, p, gamma, McOptions::default())
}

pub fn mc_norm_with(
    w: &Weight,
    alpha: f64,
    p: f64,
    gamma: f64,
    opts: McOptions,
) -> Result<MCResult> {
    check_exponent(p)?;
    check_finite("alpha", alpha)?;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    let g = *w.grid();
    let scales: Vec<Scale> = dyadic_radii(&g)
        .into_iter()
        .map(|r| Scale {
            radius: r,
            duration: Some(r.powf(gamma)),
            prefactor: r.powf(alpha),
        })
        .collect();
    let integ = space_time_integrator(w, p);
    let best = scan(&integ, &g, true, &scales, p, opts);
    let (si, m, flat) = best.key;
    Ok(MCResult {
        value: best.value,
        witness: McWitness {
            center: g.position(flat),
            time: g.time(m),
            radius: scales[si].radius,
            duration: scales[si].duration.unwrap_or(0.0),
        },
    })
}

/// `sup r^a ( r^{-n} \int_{Q_r} w^p )^{1/p}` for a fixed-time weight.
pub fn mc_norm_spatial(w: &SpatialWeight, alpha: f64, p: f64) -> Result<f64> {
    mc_norm_spatial_with(w, alpha, p, McOptions::default())
}

pub fn mc_norm_spatial_with(w: &SpatialWeight, alpha: f64, p: f64, opts: McOptions) -> Result<f64> {
    check_exponent(p)?;
    check_finite("alpha", alpha)?;
    let g = *w.grid();
    let scales: Vec<Scale> = dyadic_radii(&g)
        .into_iter()
        .map(|r| Scale {
            radius: r,
            duration: None,
            prefactor: r.powf(alpha),
        })
        .collect();
    Ok(scan(&spatial_integrator(w, p), &g, false, &scales, p, opts).value)
}

/// `sup r^a l^b ( r^{-n} l^{-1} \int_{Q_r x I_l} w^p )^{1/p}` over
/// independent dyadic sides `r` and durations `l`.
pub fn mc_norm_biparameter(w: &Weight, alpha: f64, beta: f64, p: f64) -> Result<f64> {
    let durations = dyadic_durations(w.grid());
    mc_norm_biparameter_with(w, alpha, beta, p, &durations, McOptions::default())
}

/// Biparameter norm scanning the given durations instead of the dyadic ones.
pub fn mc_norm_biparameter_with(
    w: &Weight,
    alpha: f64,
    beta: f64,
    p: f64,
    durations: &[f64],
    opts: McOptions,
) -> Result<f64> {
    check_exponent(p)?;
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    let n = w.grid().dim() as f64;
    if !(alpha > 0.0 && alpha <= n / p && beta > 0.0 && beta <= 1.0 / p) {
        return Err(Error::InvalidParameter(format!(
            "biparameter exponents need 0 < alpha <= n/p and 0 < beta <= 1/p, got alpha = {alpha}, beta = {beta}, p = {p}"
        )));
    }
    if durations.iter().any(|l| !(l.is_finite() && *l > 0.0)) || durations.is_empty() {
        return Err(Error::InvalidParameter("durations must be positive".into()));
    }
    let g = *w.grid();
    let scales: Vec<Scale> = dyadic_radii(&g)
        .into_iter()
        .flat_map(|r| {
            durations.iter().map(move |&l| Scale {
                radius: r,
                duration: Some(l),
                prefactor: r.powf(alpha) * l.powf(beta),
            })
        })
        .collect();
    Ok(scan(&space_time_integrator(w, p), &g, true, &scales, p, opts).value)
}

/// Time integral (trapezoid) of the spatial norm of each slice:
/// `\int || w(., t) ||_{MC^{a, r}} dt`.
pub fn mixed_mc_norm(w: &Weight, alpha: f64, r: f64) -> Result<f64> {
    mixed_mc_norm_with(w, alpha, r, McOptions::default())
}

pub fn mixed_mc_norm_with(w: &Weight, alpha: f64, r: f64, opts: McOptions) -> Result<f64> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "mixed norm needs exponent r > 1, got {r}"
        )));
    }
    let g = *w.grid();
    let per_slice: Vec<f64> = (0..g.time_points())
        .into_par_iter()
        .map(|m| mc_norm_spatial_with(&w.slice(m), alpha, r, opts))
        .collect::<Result<_>>()?;
    Ok(g.time_weights()
        .iter()
        .zip(&per_slice)
        .map(|(tw, v)| tw * v)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid1() -> GridSpec {
        // (2L)^g = 4 <= 2T so the largest box fits in time for g = 2
        GridSpec::new(1, 32, 1.0, 33, 2.0).unwrap()
    }

    #[test]
    fn constant_weight_closed_form() {
        let g = grid1();
        let w = Weight::constant(g, 1.0).unwrap();
        for (alpha, p) in [(3.0, 1.0), (1.5, 2.0), (2.0, 1.3)] {
            let res = mc_norm(&w, alpha, p, 2.0).unwrap();
            let want = 2.0f64.powf(alpha);
            assert!((res.value - want).abs() < 1e-9 * want, "{} vs {want}", res.value);
            assert_eq!(res.witness.radius, 2.0);
        }
    }

    #[test]
    fn full_and_adaptive_agree_for_constant() {
        let g = grid1();
        let w = Weight::constant(g, 2.5).unwrap();
        let a = mc_norm(&w, 2.5, 1.5, 2.0).unwrap().value;
        let f = mc_norm_with(&w, 2.5, 1.5, 2.0, McOptions::full()).unwrap().value;
        assert!((a - f).abs() < 1e-12 * f);
    }

    #[test]
    fn lp_endpoint_reduces_to_lp_norm() {
        // alpha = (n+g)/p: the norm is the sup of local L^p masses
        let g = grid1();
        let w = Weight::from_fn(g, |x, t| (-(x[0] * x[0]) - t * t).exp()).unwrap();
        let p = 1.5;
        let res = mc_norm_with(&w, 3.0 / p, p, 2.0, McOptions::full()).unwrap();
        let lp = super::super::lp_norm(&w, p).unwrap();
        assert!(res.value <= lp * (1.0 + 1e-12));
        assert!(res.value >= 0.9 * lp, "{} vs {lp}", res.value);
    }

    #[test]
    fn spatial_constant_and_mixed_closed_form() {
        let g = grid1();
        let w = Weight::constant(g, 1.0).unwrap();
        let s = mc_norm_spatial(&w.slice(0), 1.25, 2.0).unwrap();
        assert!((s - 2.0f64.powf(1.25)).abs() < 1e-12);
        let mixed = mixed_mc_norm(&w, 1.25, 2.0).unwrap();
        assert!((mixed - 4.0 * 2.0f64.powf(1.25)).abs() < 1e-9);
        assert!(mixed_mc_norm(&w, 1.0, 1.0).is_err());
    }

    #[test]
    fn biparameter_separable_constant() {
        let g = grid1();
        let w = Weight::constant(g, 1.0).unwrap();
        let v = mc_norm_biparameter(&w, 0.5, 0.25, 2.0).unwrap();
        let rmax = dyadic_radii(&g).last().copied().unwrap();
        let lmax = dyadic_durations(&g).last().copied().unwrap();
        assert!((v - rmax.sqrt() * lmax.powf(0.25)).abs() < 1e-9);
        assert!(mc_norm_biparameter(&w, 1.0, 0.25, 2.0).is_err());
        assert!(mc_norm_biparameter(&w, 0.5, 0.0, 2.0).is_err());
    }

    #[test]
    fn biparameter_factors_for_separable_weights() {
        let g = grid1();
        let a = |x: f64| 1.0 + (-(x - 0.3) * (x - 0.3) * 4.0).exp();
        let b = |t: f64| 0.5 + t.cos().powi(2);
        let ab = Weight::from_fn(g, |x, t| a(x[0]) * b(t)).unwrap();
        let one_b = Weight::from_fn(g, |_, t| b(t)).unwrap();
        let (alpha, beta, p) = (0.4, 0.3, 2.0);
        let opts = McOptions::full();
        let durations = dyadic_durations(&g);
        let joint = mc_norm_biparameter_with(&ab, alpha, beta, p, &durations, opts).unwrap();
        let time_part = mc_norm_biparameter_with(&one_b, alpha, beta, p, &durations, opts).unwrap();
        let rmax = dyadic_radii(&g).last().copied().unwrap();
        let space_part = mc_norm_spatial_with(&ab.slice(0), alpha, p, opts).unwrap() / b(g.time(0));
        let factored = space_part * time_part / rmax.powf(alpha);
        assert!((joint / factored - 1.0).abs() < 0.02, "{joint} vs {factored}");
    }

    #[test]
    fn biparameter_embeds_along_parabolic_durations() {
        let g = grid1();
        let (alpha, beta, p, gamma) = (0.3, 0.4, 2.0, 2.0);
        let durations: Vec<f64> = dyadic_radii(&g).iter().map(|r| r.powf(gamma)).collect();
        for seed in 0..4u64 {
            let w = Weight::from_fn(g, |x, t| {
                let s = seed as f64;
                1.0 + (x[0] * (1.0 + s) + t * s).sin().powi(2) + (-(x[0] - s * 0.2).powi(2)).exp()
            })
            .unwrap();
            let one = mc_norm_with(&w, alpha + gamma * beta, p, gamma, McOptions::full()).unwrap().value;
            let two =
                mc_norm_biparameter_with(&w, alpha, beta, p, &durations, McOptions::full()).unwrap();
            assert!(one <= two * (1.0 + 1e-12), "{one} > {two}");
        }
    }

    #[test]
    fn invalid_parameters() {
        let w = Weight::constant(grid1(), 1.0).unwrap();
        assert!(mc_norm(&w, 1.0, 0.5, 2.0).is_err());
        assert!(mc_norm(&w, f64::NAN, 2.0, 2.0).is_err());
        assert!(mc_norm(&w, 1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn witness_locates_bump() {
        let g = grid1();
        let w = Weight::from_fn(g, |x, t| {
            if (x[0] - 0.5).abs() < 0.1 && (t + 1.0).abs() < 0.1 {
                10.0
            } else {
                0.0
            }
        })
        .unwrap();
        let res = mc_norm_with(&w, 1.0, 1.0, 2.0, McOptions::full()).unwrap();
        assert!((res.witness.center[0] - 0.5).abs() <= 0.2);
        assert!((res.witness.time + 1.0).abs() <= 0.5);
    }
}

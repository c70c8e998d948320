//! Norms of fields and weights.
//!
//! * homogeneous Sobolev norms through the discrete Fourier transform
//! * weighted space-time `L^2` norms (trapezoid in time)
//! * Morrey-Campanato type norms of weights ([`mc_norm`] and variants)
//! * the centred maximal function and dyadic `A_2` constants

mod cumulative;
mod maximal;
mod morrey;

pub use maximal::{a2_constant, maximal_function};
pub use morrey::{
    dyadic_durations, dyadic_radii, mc_norm, mc_norm_biparameter, mc_norm_biparameter_with,
    mc_norm_spatial, mc_norm_spatial_with, mc_norm_with, mixed_mc_norm, mixed_mc_norm_with,
    CenterStride, MCResult, McOptions, McWitness,
};

use crate::error::{Error, Result};
use crate::grid::{Field, SpaceTimeField, Weight};
use crate::spectral::{dft_forward, homogeneous_symbol};

/// `|| |xi|^s f^ ||_{L^2}`; the zero mode is dropped.
pub fn sobolev_norm(f: &Field, s: f64) -> f64 {
    let spec = dft_forward(f);
    let g = spec.grid();
    let measure = g.dxi().powi(g.dim() as i32);
    let sum: f64 = g
        .frequency_norms()
        .iter()
        .zip(spec.coefficients())
        .map(|(&r, c)| homogeneous_symbol(r, 2.0 * s) * c.norm_sqr())
        .sum();
    (sum * measure).sqrt()
}

/// Space-time quadrature `\int\int g` of node values (trapezoid in time).
fn space_time_sum(grid: &crate::grid::GridSpec, values: impl Fn(usize) -> f64) -> f64 {
    let s = grid.spatial_len();
    let vol = grid.cell_volume();
    grid.time_weights()
        .iter()
        .enumerate()
        .map(|(m, tw)| tw * vol * (0..s).map(|j| values(m * s + j)).sum::<f64>())
        .sum()
}

/// `( \int\int |u|^2 w dx dt )^{1/2}`.
pub fn weighted_l2_norm(u: &SpaceTimeField, w: &Weight) -> Result<f64> {
    u.grid().ensure_same(w.grid(), "weighted L2 norm")?;
    let (uv, wv) = (u.values(), w.values());
    Ok(space_time_sum(u.grid(), |i| uv[i].norm_sqr() * wv[i]).sqrt())
}

/// `( \int\int |F|^2 / w dx dt )^{1/2}`; nodes where both vanish contribute
/// nothing, a non-zero `F` where `w = 0` is an error naming the node.
pub fn inverse_weighted_l2_norm(f: &SpaceTimeField, w: &Weight) -> Result<f64> {
    f.grid().ensure_same(w.grid(), "inverse weighted L2 norm")?;
    let (fv, wv) = (f.values(), w.values());
    if let Some(node) = (0..fv.len()).find(|&i| wv[i] == 0.0 && fv[i].norm_sqr() > 0.0) {
        return Err(Error::ZeroWeight(node));
    }
    Ok(space_time_sum(f.grid(), |i| {
        if wv[i] == 0.0 {
            0.0
        } else {
            fv[i].norm_sqr() / wv[i]
        }
    })
    .sqrt())
}

/// Unweighted space-time `L^2` norm.
pub fn space_time_l2_norm(u: &SpaceTimeField) -> f64 {
    let uv = u.values();
    space_time_sum(u.grid(), |i| uv[i].norm_sqr()).sqrt()
}

/// Space-time `L^p` norm of a weight.
pub fn lp_norm(w: &Weight, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!("exponent p must be >= 1, got {p}")));
    }
    let wv = w.values();
    Ok(space_time_sum(w.grid(), |i| wv[i].powf(p)).powf(1.0 / p))
}

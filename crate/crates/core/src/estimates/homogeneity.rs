//! Dyadic scaling of the weight norm:
//! `||w(2^m x, 2^{gm} t)|| = 2^{-m alpha} ||w||`.

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Weight};
use crate::norms::{mc_norm_with, McOptions};

fn scaled_grid(grid: &GridSpec, m: u32, gamma: f64) -> Result<GridSpec> {
    let lambda = 2f64.powi(m as i32);
    GridSpec::new(
        grid.dim(),
        grid.points(),
        grid.half_width() / lambda,
        grid.time_points(),
        grid.half_time() / lambda.powf(gamma),
    )
}

/// The samples of `w` relabelled onto `[-L/2^m, L/2^m)^n x [-T/2^{gm}, T/2^{gm}]`,
/// which represent `w(2^m x, 2^{gm} t)` exactly.
pub fn dyadic_rescale(w: &Weight, m: u32, gamma: f64) -> Result<Weight> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    w.relabel(scaled_grid(w.grid(), m, gamma)?)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Relative error `| 2^{m alpha} ||rescaled|| - ||w|| | / ||w||`, where
/// `rescaled` samples `w(2^m x, 2^{gm} t)` either on the same grid as `w` or
/// on the relabelled grid of [`dyadic_rescale`]. All node centres are
/// scanned.
pub fn scaling_homogeneity_check(
    w: &Weight,
    rescaled: &Weight,
    m: u32,
    alpha: f64,
    p: f64,
    gamma: f64,
) -> Result<f64> {
    let (g, h) = (w.grid(), rescaled.grid());
    let target = scaled_grid(g, m, gamma)?;
    let same_counts = g.dim() == h.dim()
        && g.points() == h.points()
        && g.time_points() == h.time_points();
    let same_box = close(g.half_width(), h.half_width()) && close(g.half_time(), h.half_time());
    let scaled_box =
        close(target.half_width(), h.half_width()) && close(target.half_time(), h.half_time());
    if !(same_counts && (same_box || scaled_box)) {
        return Err(Error::GridMismatch(format!(
            "rescaled weight must live on the original grid or on the grid scaled by 2^-{m} (space) and 2^-{m}g (time)"
        )));
    }
    let opts = McOptions::full();
    let base = mc_norm_with(w, alpha, p, gamma, opts)?.value;
    if base == 0.0 {
        return Err(Error::ZeroDenominator("weight norm"));
    }
    let scaled = mc_norm_with(rescaled, alpha, p, gamma, opts)?.value;
    Ok((2f64.powf(f64::from(m) * alpha) * scaled - base).abs() / base)
}

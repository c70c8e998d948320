//! Left-hand side over right-hand side of the weighted estimates, with the
//! constant replaced by 1.

use crate::error::{Error, Result};
use crate::grid::{EstimateParams, Field, SpaceTimeField, Weight};
use crate::norms::{
    inverse_weighted_l2_norm, mc_norm_with, mixed_mc_norm_with, sobolev_norm, weighted_l2_norm,
    McOptions,
};
use crate::spectral::{dispersive_omega, evolve_series, littlewood_paley_project, propagate_series};
use crate::wellposed::{duhamel_integral, DuhamelKind};

/// Both sides of one estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    /// Weighted `L^2` norm of the evolved data.
    pub lhs: f64,
    /// The weight-norm factor of the right-hand side (already raised to the
    /// power appearing in the estimate).
    pub weight_norm: f64,
    /// The data-norm factor of the right-hand side.
    pub data_norm: f64,
    pub ratio: f64,
}

fn report(lhs: f64, weight_norm: f64, data_norm: f64) -> Result<RatioReport> {
    if weight_norm == 0.0 || !weight_norm.is_finite() {
        return Err(Error::ZeroDenominator("weight norm"));
    }
    if data_norm == 0.0 {
        return Err(Error::ZeroDenominator("data norm"));
    }
    Ok(RatioReport {
        lhs,
        weight_norm,
        data_norm,
        ratio: lhs / (weight_norm * data_norm),
    })
}

/// `||e^{-itA} f||_{L^2(w)} / (||w||^{1/2}_{MC^{2s+g,p}_g} ||f||_{H^s})`.
pub fn homogeneous_ratio(f: &Field, w: &Weight, params: &EstimateParams) -> Result<RatioReport> {
    homogeneous_ratio_with(f, w, params, McOptions::default())
}

pub fn homogeneous_ratio_with(
    f: &Field,
    w: &Weight,
    params: &EstimateParams,
    opts: McOptions,
) -> Result<RatioReport> {
    if !params.is_homogeneous() {
        return Err(Error::InvalidParameter(format!(
            "homogeneous ratio needs alpha = 2s + gamma, got alpha = {}",
            params.alpha
        )));
    }
    let u = propagate_series(f, w.grid(), params.gamma)?;
    let lhs = weighted_l2_norm(&u, w)?;
    let mc = mc_norm_with(w, params.alpha, params.p, params.gamma, opts)?.value;
    report(lhs, mc.sqrt(), sobolev_norm(f, params.s))
}

/// Range of the frequency-localized estimate: `p > 1` and
/// `alpha > 1 + (n - 2 + 2g)/(2p)` (`g > 1`) or `alpha > 1 + (n+1)/(2p)` (`g = 1`).
pub fn frequency_localized_admissible(params: &EstimateParams) -> bool {
    let n = params.n as f64;
    let bound = if params.gamma > 1.0 {
        1.0 + (n - 2.0 + 2.0 * params.gamma) / (2.0 * params.p)
    } else {
        1.0 + (n + 1.0) / (2.0 * params.p)
    };
    params.p > 1.0 && params.alpha > bound
}

/// `||e^{itA} P_k f||_{L^2(w)} / (2^{k(alpha-g)/2} ||w||^{1/2}_{MC^{alpha,p}_g} ||f||_{L^2})`.
pub fn frequency_localized_ratio(
    f: &Field,
    w: &Weight,
    k: i32,
    params: &EstimateParams,
) -> Result<RatioReport> {
    frequency_localized_ratio_with(f, w, k, params, McOptions::default())
}

pub fn frequency_localized_ratio_with(
    f: &Field,
    w: &Weight,
    k: i32,
    params: &EstimateParams,
    opts: McOptions,
) -> Result<RatioReport> {
    if !frequency_localized_admissible(params) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {} and p = {} are outside the frequency-localized range",
            params.alpha, params.p
        )));
    }
    let lhs = localized_lhs(f, w, k, params.gamma)?;
    let mc = mc_norm_with(w, params.alpha, params.p, params.gamma, opts)?.value;
    let factor = 2f64.powf(f64::from(k) * (params.alpha - params.gamma) / 2.0);
    report(lhs, factor * mc.sqrt(), f.l2_norm())
}

/// Frequency-localized ratios for several `(k, f)` pairs sharing one weight;
/// the weight norm is computed once.
pub fn frequency_localized_sweep(
    pieces: &[(i32, Field)],
    w: &Weight,
    params: &EstimateParams,
    opts: McOptions,
) -> Result<Vec<RatioReport>> {
    if !frequency_localized_admissible(params) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {} and p = {} are outside the frequency-localized range",
            params.alpha, params.p
        )));
    }
    let mc = mc_norm_with(w, params.alpha, params.p, params.gamma, opts)?.value;
    pieces
        .iter()
        .map(|(k, f)| {
            let lhs = localized_lhs(f, w, *k, params.gamma)?;
            let factor = 2f64.powf(f64::from(*k) * (params.alpha - params.gamma) / 2.0);
            report(lhs, factor * mc.sqrt(), f.l2_norm())
        })
        .collect()
}

/// `||e^{itA} P_k f||_{L^2(w)}`.
fn localized_lhs(f: &Field, w: &Weight, k: i32, gamma: f64) -> Result<f64> {
    let piece = littlewood_paley_project(f, k)?;
    let omega: Vec<f64> = dispersive_omega(f.grid(), gamma)
        .into_iter()
        .map(|w| -w)
        .collect();
    weighted_l2_norm(&evolve_series(&piece, w.grid(), &omega, None)?, w)
}

/// Which inhomogeneous estimate is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InhomogeneousKind {
    /// `||D F||_{L^2(w)} <= C ||w||_{MC^{g,p}_g} ||F||_{L^2(w^{-1})}`,
    /// Schrodinger kernel.
    Schrodinger,
    /// `||D F||_{L^2(w)} <= C ||w||_{MC^{g,p}_{g/2}} ||F||_{L^2(w^{-1})}`,
    /// wave kernel.
    Wave,
    /// `||D F||_{L^2(w)} <= C ||w||^{1/2}_{L^1_t MC^{g/2-s,r}} ||w||^{1/2}_{MC^{2s+g/2,p}_{g/2}} ||F||_{L^2(w^{-1})}`,
    /// wave kernel.
    WaveFractional { r: f64 },
}

fn strictly_between(lo: f64, x: f64, hi: f64) -> bool {
    lo < x && x <= hi
}

/// Whether `(n, g, s, p)` (and `r`) lie in the range where the
/// inhomogeneous estimate of `kind` is known.
pub fn inhomogeneous_admissible(params: &EstimateParams, kind: InhomogeneousKind) -> bool {
    let (n, g, s, p) = (params.n as f64, params.gamma, params.s, params.p);
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
    match kind {
        InhomogeneousKind::Schrodinger => {
            if g == 2.0 {
                close(p, (n + 2.0) / 2.0)
            } else {
                g > 2.0
                    && strictly_between(
                        1f64.max((n + 2.0 * (g - 1.0)) / (2.0 * (g - 1.0))),
                        p,
                        (n + g) / g,
                    )
            }
        }
        InhomogeneousKind::Wave => {
            params.n >= 2
                && (2.0..2.0 * n).contains(&g)
                && if g == 2.0 {
                    close(p, (n + 1.0) / 2.0)
                } else {
                    strictly_between(
                        1f64.max((n - 2.0 + g) / (2.0 * (g - 1.0))),
                        p,
                        (2.0 * n + g) / (2.0 * g),
                    )
                }
        }
        InhomogeneousKind::WaveFractional { r } => {
            if g == 2.0 {
                params.n >= 2
                    && s > 0.5
                    && s < 1.0
                    && strictly_between(1.0, r, n / (1.0 - s))
                    && strictly_between(1f64.max((n + 1.0) / (4.0 * s)), p, (n + 1.0) / (2.0 * s + 1.0))
            } else {
                g > 2.0
                    && g < 3.0 * n
                    && g < 2.0 * n + 2.0 * s
                    && s > -(g - 4.0) * n / (4.0 * (n + 2.0))
                    && s < 0.5 * g.min(n)
                    && strictly_between(1.0, r, 2.0 * n / (g - 2.0 * s))
                    && strictly_between(
                        1f64.max((n + g - 2.0) / (4.0 * s + g - 2.0)),
                        p,
                        (2.0 * n + g) / (4.0 * s + g),
                    )
            }
        }
    }
}

/// Weighted norm of the Duhamel output over the kind's weight norm(s)
/// times `||F||_{L^2(w^{-1})}`.
pub fn inhomogeneous_ratio(
    forcing: &SpaceTimeField,
    w: &Weight,
    params: &EstimateParams,
    kind: InhomogeneousKind,
) -> Result<RatioReport> {
    inhomogeneous_ratio_with(forcing, w, params, kind, McOptions::default())
}

pub fn inhomogeneous_ratio_with(
    forcing: &SpaceTimeField,
    w: &Weight,
    params: &EstimateParams,
    kind: InhomogeneousKind,
    opts: McOptions,
) -> Result<RatioReport> {
    if !inhomogeneous_admissible(params, kind) {
        return Err(Error::InvalidParameter(format!(
            "(n, gamma, s, p) = ({}, {}, {}, {}) is outside the range of {kind:?}",
            params.n, params.gamma, params.s, params.p
        )));
    }
    let data_norm = inverse_weighted_l2_norm(forcing, w)?;
    let g = params.gamma;
    let (duhamel_kind, weight_norm) = match kind {
        InhomogeneousKind::Schrodinger => (
            DuhamelKind::Schrodinger,
            mc_norm_with(w, g, params.p, g, opts)?.value,
        ),
        InhomogeneousKind::Wave => (
            DuhamelKind::Wave,
            mc_norm_with(w, g, params.p, g / 2.0, opts)?.value,
        ),
        InhomogeneousKind::WaveFractional { r } => {
            let mixed = mixed_mc_norm_with(w, g / 2.0 - params.s, r, opts)?;
            let mc = mc_norm_with(w, 2.0 * params.s + g / 2.0, params.p, g / 2.0, opts)?.value;
            (DuhamelKind::Wave, (mixed * mc).sqrt())
        }
    };
    let lhs = weighted_l2_norm(&duhamel_integral(forcing, g, duhamel_kind)?, w)?;
    report(lhs, weight_norm, data_norm)
}

//! Fourier-side operators on the periodic grid.
//!
//! The discrete transform approximates the unitary Fourier transform
//! `f^(xi) = (2 pi)^{-n/2} \int f(x) e^{-i x.xi} dx` on the lattice
//! `xi_k = pi k / L`:
//!
//! ```text
//! forward:  c_k  = dx^n  (2 pi)^{-n/2} sum_j f(x_j) e^{-i xi_k . x_j}
//! inverse:  f_j  = dxi^n (2 pi)^{-n/2} sum_k c_k    e^{+i xi_k . x_j}
//! ```
//!
//! so that `sum |f_j|^2 dx^n = sum |c_k|^2 dxi^n` (Parseval). Coefficients are
//! stored in FFT order along every axis.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{norm, Field, GridSpec, SpaceTimeField};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// Unnormalized in-place FFT along every axis of a row-major `N^n` array.
fn fft_nd(data: &mut [Complex64], dim: usize, points: usize, inverse: bool) {
    let fft = plan(points, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut line = vec![Complex64::new(0.0, 0.0); points];
    for axis in 0..dim {
        let inner = points.pow((dim - 1 - axis) as u32);
        let outer = points.pow(axis as u32);
        if inner == 1 {
            fft.process_with_scratch(data, &mut scratch);
            continue;
        }
        for o in 0..outer {
            for i in 0..inner {
                let base = o * points * inner + i;
                for (k, l) in line.iter_mut().enumerate() {
                    *l = data[base + k * inner];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, l) in line.iter().enumerate() {
                    data[base + k * inner] = *l;
                }
            }
        }
    }
}

/// `(-1)^{sum of axis indices}`: the phase `e^{i xi_k L}` of the lattice
/// origin at `-L`.
fn checkerboard(grid: &GridSpec, flat: usize) -> f64 {
    let parity: usize = grid.unravel(flat).iter().sum();
    if parity.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Lattice Fourier coefficients of a field.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: GridSpec,
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: GridSpec, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != grid.spatial_len() {
            return Err(Error::SizeMismatch {
                expected: grid.spatial_len(),
                got: coefficients.len(),
            });
        }
        Ok(Self {
            grid,
            coefficients,
        })
    }

    /// Samples a continuous spectrum `rule(xi)` on the lattice.
    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let coefficients = (0..grid.spatial_len())
            .map(|k| rule(&grid.frequency(k)))
            .collect();
        Self::new(grid, coefficients)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn l2_norm(&self) -> f64 {
        let dxi = self.grid.dxi().powi(self.grid.dim() as i32);
        (self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>() * dxi).sqrt()
    }

    pub fn inverse(&self) -> Result<Field> {
        let g = self.grid;
        let mut data: Vec<Complex64> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * checkerboard(&g, k))
            .collect();
        fft_nd(&mut data, g.dim(), g.points(), true);
        let scale = (g.dxi() / (2.0 * PI).sqrt()).powi(g.dim() as i32);
        for v in &mut data {
            *v *= scale;
        }
        Field::new(g, data)
    }

    /// Trigonometric interpolant of the field at an arbitrary point.
    pub fn evaluate_at(&self, x: &[f64]) -> Complex64 {
        let g = self.grid;
        let scale = (g.dxi() / (2.0 * PI).sqrt()).powi(g.dim() as i32);
        let sum: Complex64 = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(k, c)| {
                let xi = g.frequency(k);
                let phase: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
                c * Complex64::from_polar(1.0, phase)
            })
            .sum();
        sum * scale
    }
}

pub fn dft_forward(field: &Field) -> Spectrum {
    let g = *field.grid();
    let mut data = field.values().to_vec();
    fft_nd(&mut data, g.dim(), g.points(), false);
    let scale = (g.dx() / (2.0 * PI).sqrt()).powi(g.dim() as i32);
    for (k, v) in data.iter_mut().enumerate() {
        *v *= scale * checkerboard(&g, k);
    }
    Spectrum {
        grid: g,
        coefficients: data,
    }
}

pub fn dft_inverse(spectrum: &Spectrum) -> Result<Field> {
    spectrum.inverse()
}

/// Output spectrum `m(xi) * f^(xi)`.
pub fn apply_multiplier(field: &Field, m: impl Fn(&[f64]) -> Complex64) -> Result<Field> {
    let g = *field.grid();
    let spec = dft_forward(field);
    let mut coefficients = spec.coefficients;
    for (k, c) in coefficients.iter_mut().enumerate() {
        let factor = m(&g.frequency(k));
        if !(factor.re.is_finite() && factor.im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "multiplier is not finite at lattice index {k}"
            )));
        }
        *c *= factor;
    }
    Spectrum::new(g, coefficients)?.inverse()
}

fn apply_radial(field: &Field, m: impl Fn(f64) -> Complex64) -> Result<Field> {
    apply_multiplier(field, |xi| m(norm(xi)))
}

/// `|xi|^s` with the zero mode sent to zero, so negative `s` is total.
pub fn homogeneous_symbol(r: f64, s: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else {
        r.powf(s)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma >= 1.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("gamma must be >= 1, got {gamma}")))
    }
}

/// `e^{-it(-Delta)^{gamma/2}} f`, multiplier `e^{-it|xi|^gamma}`.
pub fn propagate(field: &Field, t: f64, gamma: f64) -> Result<Field> {
    check_gamma(gamma)?;
    apply_radial(field, |r| Complex64::from_polar(1.0, -t * r.powf(gamma)))
}

/// `e^{it((-Delta)^{gamma/2})^{1/2}} f`, multiplier `e^{it|xi|^{gamma/2}}`.
pub fn half_wave_propagate(field: &Field, t: f64, gamma: f64) -> Result<Field> {
    check_gamma(gamma)?;
    apply_radial(field, |r| Complex64::from_polar(1.0, t * r.powf(gamma / 2.0)))
}

/// Exponent `omega(xi)` with `e^{-t (i xi)^{2k+1}} = e^{i t omega(xi)}`.
///
/// Since `(i xi)^{2k+1} = i (-1)^k xi^{2k+1}`, `omega = -(-1)^k xi^{2k+1}`;
/// for `k = 1` the phase is `e^{i t xi^3}`.
pub fn airy_frequency(xi: f64, k: u32) -> f64 {
    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * xi.powi(2 * k as i32 + 1)
}

fn check_airy(grid: &GridSpec, k: u32) -> Result<()> {
    if grid.dim() != 1 {
        return Err(Error::InvalidParameter(format!(
            "airy propagator needs a one-dimensional grid, got n = {}",
            grid.dim()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("airy order k must be >= 1".into()));
    }
    Ok(())
}

/// `e^{-t d_x^{2k+1}} f` on a one-dimensional grid.
pub fn airy_propagate(field: &Field, t: f64, k: u32) -> Result<Field> {
    check_airy(field.grid(), k)?;
    apply_multiplier(field, |xi| {
        Complex64::from_polar(1.0, t * airy_frequency(xi[0], k))
    })
}

/// `|nabla|^s f`, multiplier `|xi|^s` with the zero mode mapped to 0.
pub fn fractional_derivative(field: &Field, s: f64) -> Result<Field> {
    apply_radial(field, |r| Complex64::new(homogeneous_symbol(r, s), 0.0))
}

/// Littlewood-Paley piece `P_k f`, multiplier `phi(2^{-k}|xi|)`.
pub fn littlewood_paley_project(field: &Field, k: i32) -> Result<Field> {
    let scale = 2f64.powi(-k);
    apply_radial(field, |r| Complex64::new(cutoff_phi(scale * r), 0.0))
}

/// Bump `exp(-1/((t-1/2)(2-t)))` on `(1/2, 2)`.
fn eta(t: f64) -> f64 {
    if t > 0.5 && t < 2.0 {
        (-1.0 / ((t - 0.5) * (2.0 - t))).exp()
    } else {
        0.0
    }
}

/// Smooth dyadic cut-off supported in `(1/2, 2)` with
/// `sum_k phi(2^k t) = 1` for every `t > 0`.
pub fn cutoff_phi(t: f64) -> f64 {
    let num = eta(t);
    if num == 0.0 {
        return 0.0;
    }
    // 2^j t lies in (1/2, 2) for at most two consecutive j around -log2 t
    let j0 = (-t.log2()).floor() as i32;
    let den: f64 = (j0 - 2..=j0 + 2).map(|j| eta(2f64.powi(j) * t)).sum();
    num / den
}

/// Applies `amp(xi) e^{i t omega(xi)}` at every time node of `time_grid`.
///
/// `omega` and `amp` are per-lattice-index symbol tables in FFT order.
pub fn evolve_series(
    field: &Field,
    time_grid: &GridSpec,
    omega: &[f64],
    amp: Option<&[f64]>,
) -> Result<SpaceTimeField> {
    let g = *field.grid();
    if !time_grid.same_lattice(&g) {
        return Err(Error::GridMismatch("time grid lattice differs from field".into()));
    }
    if omega.len() != g.spatial_len() || amp.is_some_and(|a| a.len() != g.spatial_len()) {
        return Err(Error::SizeMismatch {
            expected: g.spatial_len(),
            got: omega.len(),
        });
    }
    let spec = dft_forward(field);
    let slices: Vec<Field> = time_grid
        .times()
        .par_iter()
        .map(|&t| {
            let coefficients = spec
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let a = amp.map_or(1.0, |a| a[k]);
                    c * Complex64::from_polar(a, t * omega[k])
                })
                .collect();
            Spectrum {
                grid: g,
                coefficients,
            }
            .inverse()
        })
        .collect::<Result<_>>()?;
    SpaceTimeField::from_slices(*time_grid, slices)
}

/// Symbol table of `e^{-it(-Delta)^{gamma/2}}`.
pub fn dispersive_omega(grid: &GridSpec, gamma: f64) -> Vec<f64> {
    grid.frequency_norms()
        .into_iter()
        .map(|r| -r.powf(gamma))
        .collect()
}

/// `e^{-it(-Delta)^{gamma/2}} f` at every time node of `time_grid`.
pub fn propagate_series(field: &Field, time_grid: &GridSpec, gamma: f64) -> Result<SpaceTimeField> {
    check_gamma(gamma)?;
    evolve_series(field, time_grid, &dispersive_omega(field.grid(), gamma), None)
}

//! One-dimensional local smoothing: for `f^` supported in `xi > 0`,
//! `\int |e^{it Delta} f(x_0)|^2 dt = (1/2) ||f||^2_{H^{-1/2}}` on the line.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Field, GridSpec};
use crate::norms::sobolev_norm;
use crate::spectral::{dft_forward, Spectrum};

/// Seeded data with `f^ = bump on [1, 2]` times a smooth random amplitude
/// and phase modulation.
pub fn smoothing_family(grid: &GridSpec, seed: u64) -> Result<Field> {
    if grid.dim() != 1 {
        return Err(Error::InvalidParameter("smoothing family is one-dimensional".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes: Vec<(f64, f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    Spectrum::from_fn(*grid, |xi| {
        let u = 2.0 * (xi[0] - 1.5);
        if u.abs() >= 1.0 {
            return Complex64::new(0.0, 0.0);
        }
        let bump = (-1.0 / (1.0 - u * u)).exp();
        let amp = 1.0 + 0.3 * modes.iter().map(|m| m.0 * (m.1 * xi[0] + m.2).cos()).sum::<f64>();
        let phase: f64 = modes.iter().map(|m| m.3 * (m.1 * xi[0] + m.2).sin()).sum();
        Complex64::from_polar(bump * amp, phase)
    })?
    .inverse()
}

/// `( \int_{-T}^{T} |e^{it Delta} f(x_0)|^2 dt )^{1/2} / ||f||_{H^{-1/2}}`,
/// trapezoid rule on the nodes of `time_grid`.
pub fn smoothing_ratio(f: &Field, x0: f64, time_grid: &GridSpec) -> Result<f64> {
    let g = *f.grid();
    if g.dim() != 1 {
        return Err(Error::InvalidParameter("smoothing ratio is one-dimensional".into()));
    }
    let spec = dft_forward(f);
    let xi: Vec<f64> = (0..g.points()).map(|k| g.frequency(k)[0]).collect();
    let base: Vec<Complex64> = spec
        .coefficients()
        .iter()
        .zip(&xi)
        .map(|(c, &k)| c * Complex64::from_polar(1.0, k * x0))
        .collect();
    let scale = g.dxi() / (2.0 * std::f64::consts::PI).sqrt();
    let squared: f64 = time_grid
        .times()
        .iter()
        .zip(time_grid.time_weights())
        .map(|(&t, tw)| {
            let value: Complex64 = base
                .iter()
                .zip(&xi)
                .map(|(c, &k)| c * Complex64::from_polar(1.0, -t * k * k))
                .sum();
            tw * (value * scale).norm_sqr()
        })
        .sum();
    let denom = sobolev_norm(f, -0.5);
    if denom == 0.0 {
        return Err(Error::ZeroDenominator("data norm"));
    }
    Ok(squared.sqrt() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_is_seeded_and_band_limited() {
        let g = GridSpec::new(1, 256, 64.0, 2, 1.0).unwrap();
        let a = smoothing_family(&g, 3).unwrap();
        let b = smoothing_family(&g, 3).unwrap();
        assert_eq!(a, b);
        let spec = dft_forward(&a);
        for (k, c) in spec.coefficients().iter().enumerate() {
            let xi = g.frequency(k)[0];
            if !(1.0..=2.0).contains(&xi) {
                assert!(c.norm() < 1e-10);
            }
        }
    }
}

//! Covariance and sweep properties of the estimate ratios.

use displab_core::estimates::{
    build_counterexample, frequency_localized_ratio_with, homogeneous_ratio_with,
    inhomogeneous_ratio_with, CounterexampleSpec, InhomogeneousKind,
};
use displab_core::fit::log_log_slope;
use displab_core::norms::McOptions;
use displab_core::spectral::{littlewood_paley_project, propagate};
use displab_core::{EstimateParams, Field, GridSpec, SpaceTimeField, Weight};
use num_complex::Complex64;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Smooth in space, compactly supported well inside `(-T, T)` in time.
fn interior_weight(g: GridSpec, floor: f64) -> Weight {
    let t_max = g.half_time();
    Weight::from_fn(g, |x, t| {
        let u = t / (0.6 * t_max);
        let envelope = if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 };
        let space: f64 = x.iter().map(|v| (-(v - 0.3).powi(2)).exp()).product();
        envelope * (floor + space)
    })
    .unwrap()
}

fn packet(g: GridSpec) -> Field {
    Field::from_fn(g, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::from_polar((-r2).exp(), 1.5 * x[0])
    })
    .unwrap()
}

#[test]
fn homogeneous_ratio_translation_invariant() {
    let g = GridSpec::new(1, 64, 8.0, 33, 2.0).unwrap();
    let params = EstimateParams::homogeneous(1, 2.0, 0.2, 1.5).unwrap();
    let (f, w) = (packet(g), interior_weight(g, 0.1));
    let base = homogeneous_ratio_with(&f, &w, &params, McOptions::full()).unwrap();
    for (cells, steps) in [(5i64, 0i64), (-7, 3), (11, -2)] {
        let tau = steps as f64 * g.dt();
        let f_moved = propagate(&f.shifted(&[cells]), -tau, 2.0).unwrap();
        let w_moved = w.shifted(&[cells], steps);
        let moved = homogeneous_ratio_with(&f_moved, &w_moved, &params, McOptions::full()).unwrap();
        assert!(close(base.ratio, moved.ratio, 1e-10), "{} vs {}", base.ratio, moved.ratio);
    }
}

/// Forcing supported in `t in (0.15 T, 0.45 T)`, so shifts by a few nodes
/// keep it away from `t = 0`, where the Duhamel integral starts.
fn late_forcing(g: GridSpec) -> SpaceTimeField {
    let t_max = g.half_time();
    SpaceTimeField::from_fn(g, |x, t| {
        let u = (t - 0.3 * t_max) / (0.15 * t_max);
        let envelope = if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 };
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::from_polar(envelope * (-r2).exp(), x[0])
    })
    .unwrap()
}

#[test]
fn inhomogeneous_ratios_translation_invariant() {
    let cases = [
        (GridSpec::new(1, 64, 8.0, 33, 2.0).unwrap(), EstimateParams::new(1, 2.0, 0.0, 1.5, 2.0).unwrap(), InhomogeneousKind::Schrodinger),
        (GridSpec::new(2, 16, 4.0, 17, 2.0).unwrap(), EstimateParams::new(2, 2.0, 0.0, 1.5, 2.0).unwrap(), InhomogeneousKind::Wave),
    ];
    for (g, params, kind) in cases {
        let (forcing, w) = (late_forcing(g), interior_weight(g, 0.1));
        let base = inhomogeneous_ratio_with(&forcing, &w, &params, kind, McOptions::full()).unwrap();
        let shift = vec![3i64; g.dim()];
        for steps in [0i64, 1, 2] {
            let moved = inhomogeneous_ratio_with(
                &forcing.shifted(&shift, steps),
                &w.shifted(&shift, steps),
                &params,
                kind,
                McOptions::full(),
            )
            .unwrap();
            assert!(close(base.ratio, moved.ratio, 1e-10), "{kind:?}: {} vs {}", base.ratio, moved.ratio);
        }
    }
}

#[test]
fn modulated_family_stays_bounded_inside_true_region() {
    // gamma = 2, n = 1, s = 0.3: the estimate holds for 1 < p <= 3/2.6
    let g = GridSpec::new(1, 512, 16.0, 129, 1.0).unwrap();
    let params = EstimateParams::homogeneous(1, 2.0, 0.3, 1.1).unwrap();
    let w = Weight::from_fn(g, |x, t| (-x[0] * x[0] - t * t).exp()).unwrap();
    let ms = [4.0, 8.0, 16.0, 32.0];
    let ratios: Vec<f64> = ms
        .iter()
        .map(|&m| {
            let f = Field::from_fn(g, |x| Complex64::from_polar((-x[0] * x[0]).exp(), m * x[0])).unwrap();
            homogeneous_ratio_with(&f, &w, &params, McOptions::default()).unwrap().ratio
        })
        .collect();
    let slope = log_log_slope(&ms, &ratios);
    assert!(slope <= 0.1, "slope {slope}, ratios {ratios:?}");
}

#[test]
fn boosted_forcing_family_stays_bounded() {
    // Galilean boosts F_M = e^{i(Mx - M^2 t)} F(x - 2Mt, t), w_M = w(x - 2Mt, t);
    // at p = (n+2)/2 the weight norm is the L^p endpoint, which the shear preserves
    let g = GridSpec::new(1, 512, 16.0, 65, 0.5).unwrap();
    let params = EstimateParams::new(1, 2.0, 0.0, 1.5, 2.0).unwrap();
    let period = 2.0 * g.half_width();
    let wrap = |x: f64| (x + g.half_width()).rem_euclid(period) - g.half_width();
    let ms = [4.0, 8.0, 16.0, 32.0];
    let ratios: Vec<f64> = ms
        .iter()
        .map(|&m| {
            let forcing = SpaceTimeField::from_fn(g, |x, t| {
                let y = wrap(x[0] - 2.0 * m * t);
                Complex64::from_polar((-y * y - 4.0 * t * t).exp(), m * x[0] - m * m * t)
            })
            .unwrap();
            let w = Weight::from_fn(g, |x, t| {
                let y = wrap(x[0] - 2.0 * m * t);
                0.05 + (-y * y).exp()
            })
            .unwrap();
            inhomogeneous_ratio_with(&forcing, &w, &params, InhomogeneousKind::Schrodinger, McOptions::default())
                .unwrap()
                .ratio
        })
        .collect();
    let slope = log_log_slope(&ms, &ratios);
    assert!(slope <= 0.1, "slope {slope}, ratios {ratios:?}");
}

#[test]
fn frequency_localized_at_k0_is_the_homogeneous_flow_of_p0f() {
    // with w even in t, e^{itA} and e^{-itA} give the same weighted norm
    let g = GridSpec::new(1, 64, 8.0, 33, 2.0).unwrap();
    let w = Weight::from_fn(g, |x, t| (-x[0] * x[0] - t * t).exp()).unwrap();
    let f = packet(g);
    let local = EstimateParams::new(1, 2.0, 0.0, 2.0, 2.6).unwrap();
    let a = frequency_localized_ratio_with(&f, &w, 0, &local, McOptions::default()).unwrap();
    let homogeneous = EstimateParams::homogeneous(1, 2.0, 0.0, 1.5).unwrap();
    let p0f = littlewood_paley_project(&f, 0).unwrap();
    let b = homogeneous_ratio_with(&p0f, &w, &homogeneous, McOptions::default()).unwrap();
    assert!(close(a.lhs, b.lhs, 1e-12), "{} vs {}", a.lhs, b.lhs);
}

#[test]
fn slab_mass_is_offset_independent() {
    for m in [8.0, 16.0, 32.0, 64.0] {
        let spec = CounterexampleSpec::standard(m, 1).unwrap();
        let (_, w) = build_counterexample(&spec).unwrap();
        let mass = w.total_mass();
        assert!((mass / 0.25 - 1.0).abs() < 0.02, "M = {m}: |B| = {mass}");
    }
}

//! Duhamel quadrature and Picard solvers for linear dispersive equations
//! with a space-time potential `V`.
//!
//! Integral equations (`A = (-Delta)^{g/2}`, `rho = A^{1/2}`):
//!
//! ```text
//! schrodinger: u = e^{-itA} f - i D(F - V u),     D K = \int_0^t e^{-i(t-s)A} K(s) ds
//! wave:        u = cos(t rho) f + rho^{-1} sin(t rho) g + D(F - V u),
//!                                                   D K = \int_0^t rho^{-1} sin((t-s) rho) K(s) ds
//! kdv(k):      u = S(t) f + D(F - V u),            S(t) = e^{-t d_x^{2k+1}}
//! ```
//!
//! Time integrals use the composite trapezoid rule on the grid nodes; the
//! `(t - s)` dependence of every kernel factors through the group law, so a
//! full Duhamel evaluation costs one running sum per Fourier mode.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Field, GridSpec, SpaceTimeField, Weight};
use crate::norms::{inverse_weighted_l2_norm, mc_norm, weighted_l2_norm};
use crate::spectral::{airy_frequency, dft_forward, dispersive_omega, evolve_series, Spectrum};

/// Which evolution (and hence which Duhamel kernel) is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuhamelKind {
    /// Kernel `e^{-i(t-s)|xi|^g}`.
    Schrodinger,
    /// Kernel `sin((t-s)|xi|^{g/2}) / |xi|^{g/2}` (zero mode mapped to 0).
    Wave,
    /// Kernel `e^{-(t-s)(i xi)^{2k+1}}`, one-dimensional, `g = 2k+1`.
    Kdv(u32),
}

impl DuhamelKind {
    fn check(self, grid: &GridSpec, gamma: f64) -> Result<()> {
        let ok = match self {
            DuhamelKind::Schrodinger => gamma.is_finite() && gamma >= 1.0,
            DuhamelKind::Wave => gamma.is_finite() && gamma >= 2.0,
            DuhamelKind::Kdv(k) => k >= 1 && gamma == f64::from(2 * k + 1) && grid.dim() == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "gamma = {gamma} is out of range for {self:?} on a {}-dimensional grid",
                grid.dim()
            )))
        }
    }
}

fn zero_index(grid: &GridSpec) -> Result<usize> {
    grid.zero_time_index().ok_or_else(|| {
        Error::InvalidGrid(format!(
            "Duhamel integrals need t = 0 on the time grid (odd time count), got {}",
            grid.time_points()
        ))
    })
}

fn spectra_of(u: &SpaceTimeField) -> Vec<Vec<Complex64>> {
    (0..u.grid().time_points())
        .into_par_iter()
        .map(|m| dft_forward(&u.slice_field(m)).coefficients().to_vec())
        .collect()
}

fn field_of_spectra(grid: GridSpec, spectra: Vec<Vec<Complex64>>) -> Result<SpaceTimeField> {
    let slices = spectra
        .into_par_iter()
        .map(|c| Spectrum::new(grid, c)?.inverse())
        .collect::<Result<Vec<Field>>>()?;
    SpaceTimeField::from_slices(grid, slices)
}

/// Running trapezoid sums `\int_0^{t_m} h(s) ds` of per-mode integrands,
/// outward from the node `t = 0` in both directions.
fn running_trapezoid(
    integrand: &[Vec<Complex64>],
    zero: usize,
    dt: f64,
) -> Vec<Vec<Complex64>> {
    let nt = integrand.len();
    let modes = integrand[0].len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); modes]; nt];
    for m in zero + 1..nt {
        let (done, rest) = out.split_at_mut(m);
        for (k, v) in rest[0].iter_mut().enumerate() {
            *v = done[m - 1][k] + 0.5 * dt * (integrand[m - 1][k] + integrand[m][k]);
        }
    }
    for m in (0..zero).rev() {
        let (head, tail) = out.split_at_mut(m + 1);
        for (k, v) in head[m].iter_mut().enumerate() {
            *v = tail[0][k] - 0.5 * dt * (integrand[m + 1][k] + integrand[m][k]);
        }
    }
    out
}

fn phase_table(grid: &GridSpec, gamma: f64, kind: DuhamelKind) -> Vec<f64> {
    match kind {
        DuhamelKind::Schrodinger => dispersive_omega(grid, gamma),
        DuhamelKind::Wave => grid
            .frequency_norms()
            .into_iter()
            .map(|r| r.powf(gamma / 2.0))
            .collect(),
        DuhamelKind::Kdv(k) => (0..grid.spatial_len())
            .map(|i| airy_frequency(grid.frequency(i)[0], k))
            .collect(),
    }
}

/// `\int_0^t K(t-s) F(s) ds` at every time node (no `-i` prefactor), by the
/// composite trapezoid rule. The output at `t = 0` is exactly zero.
pub fn duhamel_integral(
    forcing: &SpaceTimeField,
    gamma: f64,
    kind: DuhamelKind,
) -> Result<SpaceTimeField> {
    let g = *forcing.grid();
    kind.check(&g, gamma)?;
    let zero = zero_index(&g)?;
    let times = g.times();
    let omega = phase_table(&g, gamma, kind);
    let hat = spectra_of(forcing);
    let result: Vec<Vec<Complex64>> = match kind {
        DuhamelKind::Schrodinger | DuhamelKind::Kdv(_) => {
            // e^{i(t-s)w} = e^{itw} e^{-isw}
            let integrand: Vec<Vec<Complex64>> = hat
                .par_iter()
                .zip(&times)
                .map(|(c, &s)| {
                    c.iter()
                        .zip(&omega)
                        .map(|(c, w)| c * Complex64::from_polar(1.0, -s * w))
                        .collect()
                })
                .collect();
            let sums = running_trapezoid(&integrand, zero, g.dt());
            sums.into_par_iter()
                .zip(&times)
                .map(|(acc, &t)| {
                    acc.iter()
                        .zip(&omega)
                        .map(|(a, w)| a * Complex64::from_polar(1.0, t * w))
                        .collect()
                })
                .collect()
        }
        DuhamelKind::Wave => {
            // sin((t-s)r) = sin(tr) cos(sr) - cos(tr) sin(sr)
            let (cos_part, sin_part): (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) = hat
                .par_iter()
                .zip(&times)
                .map(|(c, &s)| {
                    c.iter()
                        .zip(&omega)
                        .map(|(c, r)| (c * (s * r).cos(), c * (s * r).sin()))
                        .unzip()
                })
                .unzip();
            let cs = running_trapezoid(&cos_part, zero, g.dt());
            let ss = running_trapezoid(&sin_part, zero, g.dt());
            cs.into_par_iter()
                .zip(ss)
                .zip(&times)
                .map(|((c, s), &t)| {
                    c.iter()
                        .zip(&s)
                        .zip(&omega)
                        .map(|((c, s), &r)| {
                            if r == 0.0 {
                                Complex64::new(0.0, 0.0)
                            } else {
                                (c * (t * r).sin() - s * (t * r).cos()) / r
                            }
                        })
                        .collect()
                })
                .collect()
        }
    };
    field_of_spectra(g, result)
}

fn wave_symbols(grid: &GridSpec, gamma: f64) -> Result<Vec<f64>> {
    if !(gamma.is_finite() && gamma >= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "wave order gamma must be >= 2, got {gamma}"
        )));
    }
    Ok(phase_table(grid, gamma, DuhamelKind::Wave))
}

/// `cos(t rho) f + rho^{-1} sin(t rho) g` at every node of `time_grid`,
/// `rho = |xi|^{g/2}`; the zero mode of `g` is dropped.
pub fn homogeneous_wave(
    f: &Field,
    g: &Field,
    time_grid: &GridSpec,
    gamma: f64,
) -> Result<SpaceTimeField> {
    let grid = *f.grid();
    grid.ensure_same_lattice(g.grid(), "wave data")?;
    if !time_grid.same_lattice(&grid) {
        return Err(Error::GridMismatch("time grid lattice differs from data".into()));
    }
    let rho = wave_symbols(&grid, gamma)?;
    let (fh, gh) = (dft_forward(f), dft_forward(g));
    let spectra: Vec<Vec<Complex64>> = time_grid
        .times()
        .par_iter()
        .map(|&t| {
            fh.coefficients()
                .iter()
                .zip(gh.coefficients())
                .zip(&rho)
                .map(|((a, b), &r)| {
                    let sine = if r == 0.0 { 0.0 } else { (t * r).sin() / r };
                    a * (t * r).cos() + b * sine
                })
                .collect()
        })
        .collect();
    field_of_spectra(*time_grid, spectra)
}

/// `||d_t u(t)||^2 + ||rho u(t)||^2` of the homogeneous wave solution,
/// with `d_t u` from the exact multiplier derivative.
pub fn wave_energy(f: &Field, g: &Field, t: f64, gamma: f64) -> Result<f64> {
    let grid = *f.grid();
    grid.ensure_same_lattice(g.grid(), "wave data")?;
    let rho = wave_symbols(&grid, gamma)?;
    let (fh, gh) = (dft_forward(f), dft_forward(g));
    let measure = grid.dxi().powi(grid.dim() as i32);
    let energy: f64 = fh
        .coefficients()
        .iter()
        .zip(gh.coefficients())
        .zip(&rho)
        .map(|((a, b), &r)| {
            if r == 0.0 {
                // the zero mode of g is dropped and rho u vanishes there
                return 0.0;
            }
            let u = a * (t * r).cos() + b * ((t * r).sin() / r);
            let ut = -a * r * (t * r).sin() + b * (t * r).cos();
            ut.norm_sqr() + r * r * u.norm_sqr()
        })
        .sum();
    Ok(energy * measure)
}

/// Real potential `V(x, t)` sampled on the space-time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    grid: GridSpec,
    values: Vec<f64>,
}

impl Potential {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.space_time_len() {
            return Err(Error::SizeMismatch {
                expected: grid.space_time_len(),
                got: values.len(),
            });
        }
        if let Some(node) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(node));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64], f64) -> f64) -> Result<Self> {
        let s = grid.spatial_len();
        let values = (0..grid.space_time_len())
            .map(|i| rule(&grid.position(i % s), grid.time(i / s)))
            .collect();
        Self::new(grid, values)
    }

    /// Accepts complex samples only when every imaginary part vanishes.
    pub fn from_complex(grid: GridSpec, values: &[Complex64]) -> Result<Self> {
        if let Some(node) = values.iter().position(|v| v.im != 0.0) {
            return Err(Error::NonRealPotential(node));
        }
        Self::new(grid, values.iter().map(|v| v.re).collect())
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.space_time_len()],
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scale(&self, c: f64) -> Potential {
        Potential {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `|V|` as a weight.
    pub fn weight(&self) -> Weight {
        Weight::new(self.grid, self.values.iter().map(|v| v.abs()).collect())
            .expect("finite absolute values form a weight")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// Diagnostics of a Picard solve.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardReport {
    pub iterations: usize,
    /// `||u - (homogeneous + c D(F - V u))||_{L^2(|V|)}` of the returned iterate.
    pub residual: f64,
    /// `||u_{k+2} - u_{k+1}|| / ||u_{k+1} - u_k||` in `L^2(|V|)`.
    pub contraction_estimates: Vec<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 50,
        }
    }
}

/// A linear problem `u = H + c D(F - V u)` ready for iteration.
#[derive(Debug, Clone)]
pub struct Problem {
    kind: DuhamelKind,
    gamma: f64,
    homogeneous: SpaceTimeField,
    forcing: SpaceTimeField,
    potential: Potential,
}

impl Problem {
    /// `g` is the initial velocity and is only used (and required) for the
    /// wave kind.
    pub fn new(
        f: &Field,
        g: Option<&Field>,
        potential: &Potential,
        forcing: &SpaceTimeField,
        gamma: f64,
        kind: DuhamelKind,
    ) -> Result<Self> {
        let grid = *forcing.grid();
        grid.ensure_same(potential.grid(), "potential")?;
        grid.ensure_same_lattice(f.grid(), "initial data")?;
        kind.check(&grid, gamma)?;
        zero_index(&grid)?;
        let homogeneous = match kind {
            DuhamelKind::Schrodinger => {
                evolve_series(f, &grid, &dispersive_omega(&grid, gamma), None)?
            }
            DuhamelKind::Wave => {
                let g = g.ok_or_else(|| {
                    Error::InvalidParameter("wave problems need an initial velocity".into())
                })?;
                homogeneous_wave(f, g, &grid, gamma)?
            }
            DuhamelKind::Kdv(k) => {
                let omega = phase_table(&grid, gamma, DuhamelKind::Kdv(k));
                evolve_series(f, &grid, &omega, None)?
            }
        };
        Ok(Self {
            kind,
            gamma,
            homogeneous,
            forcing: forcing.clone(),
            potential: potential.clone(),
        })
    }

    pub fn homogeneous(&self) -> &SpaceTimeField {
        &self.homogeneous
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    fn coupling(&self) -> Complex64 {
        match self.kind {
            DuhamelKind::Schrodinger => Complex64::new(0.0, -1.0),
            DuhamelKind::Wave | DuhamelKind::Kdv(_) => Complex64::new(1.0, 0.0),
        }
    }

    /// `c D(K)`.
    fn integrate(&self, k: &SpaceTimeField) -> Result<SpaceTimeField> {
        Ok(duhamel_integral(k, self.gamma, self.kind)?.scale(self.coupling()))
    }

    /// The fixed-point map `u -> H + c D(F - V u)`.
    pub fn apply(&self, u: &SpaceTimeField) -> Result<SpaceTimeField> {
        let source = self.forcing.sub(&u.mul_real(self.potential.values()))?;
        self.homogeneous.add(&self.integrate(&source)?)
    }

    /// Linear part `d -> -c D(V d)` of the fixed-point map.
    fn linear_part(&self, d: &SpaceTimeField) -> Result<SpaceTimeField> {
        Ok(self.integrate(&d.mul_real(self.potential.values()))?.scale(Complex64::new(-1.0, 0.0)))
    }

    fn norm(&self, u: &SpaceTimeField) -> Result<f64> {
        weighted_l2_norm(u, &self.potential.weight())
    }

    /// `||u - apply(u)||_{L^2(|V|)}`.
    pub fn defect(&self, u: &SpaceTimeField) -> Result<f64> {
        self.norm(&u.sub(&self.apply(u)?)?)
    }

    /// Largest ratio `||L d|| / ||d||` over a few power iterations of the
    /// linear part started at the homogeneous solution.
    pub fn contraction_probe(&self, steps: usize) -> Result<f64> {
        let mut d = self.homogeneous.clone();
        let mut best = 0.0f64;
        for _ in 0..steps {
            let nd = self.norm(&d)?;
            if nd == 0.0 {
                break;
            }
            let next = self.linear_part(&d)?;
            best = best.max(self.norm(&next)? / nd);
            d = next.scale(Complex64::new(1.0 / nd, 0.0));
        }
        Ok(best)
    }
}

/// Iterates `u_{k+1} = H + c D(F - V u_k)` from `u_0 = H` until the change
/// in `L^2(|V|)` falls below `tol`.
pub fn picard_solve(
    problem: &Problem,
    opts: PicardOptions,
) -> Result<(SpaceTimeField, PicardReport)> {
    let mut u = problem.homogeneous.clone();
    let mut norms = vec![problem.norm(&u)?];
    let mut diffs: Vec<f64> = Vec::new();
    let mut contraction = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let next = problem.apply(&u)?;
        iterations += 1;
        let diff = problem.norm(&next.sub(&u)?)?;
        if let Some(&prev) = diffs.last() {
            if prev > 0.0 {
                contraction.push(diff / prev);
            }
        }
        diffs.push(diff);
        u = next;
        norms.push(problem.norm(&u)?);
        let k = norms.len() - 1;
        if k >= 5 && norms[k] > 10.0 * norms[k - 5] {
            return Err(Error::Divergence {
                iterations,
                contraction,
            });
        }
        if diff < opts.tol {
            converged = true;
            break;
        }
    }
    let residual = problem.defect(&u)?;
    Ok((
        u,
        PicardReport {
            iterations,
            residual,
            contraction_estimates: contraction,
            converged,
        },
    ))
}

/// Halves `V` until the contraction probe of the rebuilt problem is below
/// `target`; returns the problem together with the applied scale.
pub fn rescale_small(
    f: &Field,
    g: Option<&Field>,
    potential: &Potential,
    forcing: &SpaceTimeField,
    gamma: f64,
    kind: DuhamelKind,
    target: f64,
) -> Result<(Problem, f64)> {
    let mut scale = 1.0;
    for _ in 0..64 {
        let problem = Problem::new(f, g, &potential.scale(scale), forcing, gamma, kind)?;
        if problem.contraction_probe(8)? < target {
            return Ok((problem, scale));
        }
        scale *= 0.5;
    }
    Err(Error::InvalidParameter(
        "potential could not be rescaled below the contraction target".into(),
    ))
}

/// Both sides of the weighted well-posedness bounds (Schrodinger form,
/// constant 1):
///
/// ```text
/// lhs1 = ||u||_{L^2(|V|)}        rhs1 = ||V||^{1/2} ||f|| + ||V|| ||F||_{L^2(|V|^{-1})}
/// lhs2 = sup_t ||u(t)||_{L^2}     rhs2 = ||f|| + ||V||^{1/2} ||F||_{L^2(|V|^{-1})}
/// ```
///
/// with `||V||` the Morrey-Campanato norm of `|V|` with `alpha = g`.
/// A forcing supported where `V = 0` makes the right-hand sides infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequalities {
    pub lhs1: f64,
    pub rhs1: f64,
    pub lhs2: f64,
    pub rhs2: f64,
}

pub fn wellposedness_inequalities(
    u: &SpaceTimeField,
    f: &Field,
    forcing: &SpaceTimeField,
    potential: &Potential,
    gamma: f64,
    p: f64,
) -> Result<Inequalities> {
    let w = potential.weight();
    let v_norm = mc_norm(&w, gamma, p, gamma)?.value;
    let f_norm = f.l2_norm();
    let forcing_norm = match inverse_weighted_l2_norm(forcing, &w) {
        Ok(v) => v,
        Err(Error::ZeroWeight(_)) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    // 0 * inf is taken as 0: a vanishing forcing contributes nothing
    let product = |a: f64, b: f64| if b == 0.0 { 0.0 } else { a * b };
    let lhs2 = u.slice_norms().into_iter().fold(0.0, f64::max);
    Ok(Inequalities {
        lhs1: weighted_l2_norm(u, &w)?,
        rhs1: v_norm.sqrt() * f_norm + product(v_norm, forcing_norm),
        lhs2,
        rhs2: f_norm + product(v_norm.sqrt(), forcing_norm),
    })
}

/// `max_t | ||u(t)||_{L^2} - ||u(0)||_{L^2} |`.
pub fn mass_drift(u: &SpaceTimeField, potential: &Potential) -> Result<f64> {
    u.grid().ensure_same(potential.grid(), "mass drift")?;
    let zero = zero_index(u.grid())?;
    let norms = u.slice_norms();
    Ok(norms.iter().map(|n| (n - norms[zero]).abs()).fold(0.0, f64::max))
}

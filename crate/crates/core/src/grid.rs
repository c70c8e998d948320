//! Periodic spatial grids, sampled fields and weights, and seeded test data.
//!
//! Space is the periodic box `[-L, L)^n` sampled at `N` points per axis,
//! time is the closed window `[-T, T]` sampled at `Nt` points including both
//! endpoints. Multi-dimensional samples are stored row-major with axis 0
//! slowest; space-time samples are stored time-major (one spatial slice per
//! time node).

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Discretization of `[-L, L)^n x [-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    points: usize,
    half_width: f64,
    time_points: usize,
    half_time: f64,
}

impl GridSpec {
    pub fn new(
        dim: usize,
        points: usize,
        half_width: f64,
        time_points: usize,
        half_time: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {points}"
            )));
        }
        if time_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 time samples, got {time_points}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if !(half_time.is_finite() && half_time > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half-time must be positive, got {half_time}"
            )));
        }
        Ok(Self {
            dim,
            points,
            half_width,
            time_points,
            half_time,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn time_points(&self) -> usize {
        self.time_points
    }

    pub fn half_time(&self) -> f64 {
        self.half_time
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn dt(&self) -> f64 {
        2.0 * self.half_time / (self.time_points - 1) as f64
    }

    /// Frequency lattice spacing `pi / L`.
    pub fn dxi(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    /// Number of spatial nodes, `N^n`.
    pub fn spatial_len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn space_time_len(&self) -> usize {
        self.spatial_len() * self.time_points
    }

    /// Volume element `dx^n`.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Lebesgue measure of the spatial box, `(2L)^n`.
    pub fn box_measure(&self) -> f64 {
        (2.0 * self.half_width).powi(self.dim as i32)
    }

    pub fn coordinate(&self, axis_index: usize) -> f64 {
        -self.half_width + axis_index as f64 * self.dx()
    }

    pub fn time(&self, m: usize) -> f64 {
        if m + 1 == self.time_points {
            self.half_time
        } else {
            -self.half_time + m as f64 * self.dt()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.time_points).map(|m| self.time(m)).collect()
    }

    /// Trapezoid weights of the time nodes; they sum to `2T`.
    pub fn time_weights(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.time_points)
            .map(|m| {
                if m == 0 || m + 1 == self.time_points {
                    0.5 * dt
                } else {
                    dt
                }
            })
            .collect()
    }

    /// Index of the node at `t = 0`, present when `Nt` is odd.
    pub fn zero_time_index(&self) -> Option<usize> {
        (self.time_points % 2 == 1).then_some((self.time_points - 1) / 2)
    }

    /// Splits a flat spatial index into per-axis indices.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.points + i)
    }

    pub fn position(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .into_iter()
            .map(|i| self.coordinate(i))
            .collect()
    }

    /// Nearest node index along an axis for a coordinate (periodic).
    pub fn axis_index_of(&self, x: f64) -> usize {
        let n = self.points as f64;
        let u = ((x + self.half_width) / self.dx()).round().rem_euclid(n);
        u as usize % self.points
    }

    /// Signed lattice mode `k` in `[-N/2, N/2)` for an FFT-ordered index.
    pub fn signed_mode(&self, i: usize) -> i64 {
        if i < self.points / 2 {
            i as i64
        } else {
            i as i64 - self.points as i64
        }
    }

    /// Frequency vector `xi = pi k / L` of a flat FFT-ordered index.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let dxi = self.dxi();
        self.unravel(flat)
            .into_iter()
            .map(|i| self.signed_mode(i) as f64 * dxi)
            .collect()
    }

    /// `|xi|` for every flat FFT-ordered index.
    pub fn frequency_norms(&self) -> Vec<f64> {
        (0..self.spatial_len())
            .map(|k| norm(&self.frequency(k)))
            .collect()
    }

    /// Same discretization with a different time window.
    pub fn with_time(&self, time_points: usize, half_time: f64) -> Result<Self> {
        Self::new(
            self.dim,
            self.points,
            self.half_width,
            time_points,
            half_time,
        )
    }

    pub(crate) fn same_lattice(&self, other: &GridSpec) -> bool {
        self.dim == other.dim && self.points == other.points && self.half_width == other.half_width
    }

    pub(crate) fn ensure_same_lattice(&self, other: &GridSpec, what: &str) -> Result<()> {
        if self.same_lattice(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{what}: {self:?} vs {other:?}")))
        }
    }

    pub(crate) fn ensure_same(&self, other: &GridSpec, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{what}: {self:?} vs {other:?}")))
        }
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Complex samples on the spatial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl Field {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.spatial_len() {
            return Err(Error::SizeMismatch {
                expected: grid.spatial_len(),
                got: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.spatial_len()],
        }
    }

    /// Samples `rule` at every spatial node.
    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let values = (0..grid.spatial_len())
            .map(|j| rule(&grid.position(j)))
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.grid.ensure_same_lattice(&other.grid, "field sum")?;
        Ok(Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Maximum absolute difference between two fields on the same grid.
    pub fn max_abs_diff(&self, other: &Field) -> Result<f64> {
        self.grid.ensure_same_lattice(&other.grid, "field comparison")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Circular shift by whole grid cells along every axis.
    pub fn shifted(&self, shift: &[i64]) -> Field {
        let g = self.grid;
        let mut out = vec![Complex64::new(0.0, 0.0); g.spatial_len()];
        for (j, v) in self.values.iter().enumerate() {
            let idx: Vec<usize> = g
                .unravel(j)
                .iter()
                .zip(shift)
                .map(|(&i, &s)| (i as i64 + s).rem_euclid(g.points as i64) as usize)
                .collect();
            out[g.ravel(&idx)] = *v;
        }
        Field {
            grid: g,
            values: out,
        }
    }
}

/// Complex samples on the space-time grid, one spatial slice per time node.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl SpaceTimeField {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.space_time_len() {
            return Err(Error::SizeMismatch {
                expected: grid.space_time_len(),
                got: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.space_time_len()],
        }
    }

    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64], f64) -> Complex64) -> Result<Self> {
        let s = grid.spatial_len();
        let mut values = Vec::with_capacity(grid.space_time_len());
        for m in 0..grid.time_points() {
            let t = grid.time(m);
            values.extend((0..s).map(|j| rule(&grid.position(j), t)));
        }
        Self::new(grid, values)
    }

    /// Stacks per-time slices; all slices must live on `grid`'s spatial lattice.
    pub fn from_slices(grid: GridSpec, slices: Vec<Field>) -> Result<Self> {
        if slices.len() != grid.time_points() {
            return Err(Error::SizeMismatch {
                expected: grid.time_points(),
                got: slices.len(),
            });
        }
        let mut values = Vec::with_capacity(grid.space_time_len());
        for f in slices {
            if !f.grid.same_lattice(&grid) {
                return Err(Error::GridMismatch("slice lattice differs".into()));
            }
            values.extend(f.values);
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn slice(&self, m: usize) -> &[Complex64] {
        let s = self.grid.spatial_len();
        &self.values[m * s..(m + 1) * s]
    }

    pub fn slice_field(&self, m: usize) -> Field {
        Field {
            grid: self.grid,
            values: self.slice(m).to_vec(),
        }
    }

    pub fn scale(&self, c: Complex64) -> SpaceTimeField {
        SpaceTimeField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.grid.ensure_same(&other.grid, "space-time sum")?;
        Ok(SpaceTimeField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Pointwise product with a real space-time sample array on the same grid.
    pub fn mul_real(&self, factor: &[f64]) -> SpaceTimeField {
        debug_assert_eq!(factor.len(), self.values.len());
        SpaceTimeField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(factor)
                .map(|(v, f)| v * f)
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &SpaceTimeField) -> Result<f64> {
        self.grid.ensure_same(&other.grid, "space-time comparison")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `L^2` norm of each time slice.
    pub fn slice_norms(&self) -> Vec<f64> {
        let vol = self.grid.cell_volume();
        (0..self.grid.time_points())
            .map(|m| {
                (self.slice(m).iter().map(|v| v.norm_sqr()).sum::<f64>() * vol).sqrt()
            })
            .collect()
    }

    /// Circular spatial shift by whole cells and time shift by whole nodes
    /// (vacated time nodes are zero).
    pub fn shifted(&self, shift: &[i64], time_shift: i64) -> SpaceTimeField {
        let g = self.grid;
        let s = g.spatial_len();
        let mut out = vec![Complex64::new(0.0, 0.0); g.space_time_len()];
        for m in 0..g.time_points() {
            let target = m as i64 + time_shift;
            if target < 0 || target >= g.time_points() as i64 {
                continue;
            }
            let moved = self.slice_field(m).shifted(shift);
            let t = target as usize;
            out[t * s..(t + 1) * s].copy_from_slice(&moved.values);
        }
        SpaceTimeField {
            grid: g,
            values: out,
        }
    }
}

/// Nonnegative real samples on the space-time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    grid: GridSpec,
    values: Vec<f64>,
}

impl Weight {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.space_time_len() {
            return Err(Error::SizeMismatch {
                expected: grid.space_time_len(),
                got: values.len(),
            });
        }
        for (node, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite(node));
            }
            if value < 0.0 {
                return Err(Error::NegativeWeight { node, value });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: GridSpec, c: f64) -> Result<Self> {
        Self::new(grid, vec![c; grid.space_time_len()])
    }

    /// Samples `rule` at every space-time node. Negative or non-finite
    /// samples are errors.
    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64], f64) -> f64) -> Result<Self> {
        Self::new(grid, sample_space_time(&grid, rule))
    }

    /// Samples a rule with isolated singular nodes (e.g. `|x|^{-a}` at the
    /// origin): every non-finite sample is replaced by the mean of its finite
    /// axis neighbours in space and time.
    pub fn from_fn_singular(grid: GridSpec, rule: impl Fn(&[f64], f64) -> f64) -> Result<Self> {
        let mut values = sample_space_time(&grid, rule);
        regularize_singular(&grid, &mut values, true);
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn slice(&self, m: usize) -> SpatialWeight {
        let s = self.grid.spatial_len();
        SpatialWeight {
            grid: self.grid,
            values: self.values[m * s..(m + 1) * s].to_vec(),
        }
    }

    /// Trapezoid integral of the weight over the space-time grid.
    pub fn total_mass(&self) -> f64 {
        let s = self.grid.spatial_len();
        let vol = self.grid.cell_volume();
        self.grid
            .time_weights()
            .iter()
            .enumerate()
            .map(|(m, tw)| tw * vol * self.values[m * s..(m + 1) * s].iter().sum::<f64>())
            .sum()
    }

    pub fn scale(&self, c: f64) -> Result<Weight> {
        Weight::new(self.grid, self.values.iter().map(|v| v * c).collect())
    }

    /// Same samples relabelled on another grid with identical node counts.
    pub fn relabel(&self, grid: GridSpec) -> Result<Weight> {
        if grid.dim() != self.grid.dim()
            || grid.points() != self.grid.points()
            || grid.time_points() != self.grid.time_points()
        {
            return Err(Error::GridMismatch("relabel needs equal node counts".into()));
        }
        Weight::new(grid, self.values.clone())
    }

    pub fn shifted(&self, shift: &[i64], time_shift: i64) -> Weight {
        let g = self.grid;
        let s = g.spatial_len();
        let mut out = vec![0.0; g.space_time_len()];
        for m in 0..g.time_points() {
            let target = m as i64 + time_shift;
            if target < 0 || target >= g.time_points() as i64 {
                continue;
            }
            for j in 0..s {
                let idx: Vec<usize> = g
                    .unravel(j)
                    .iter()
                    .zip(shift)
                    .map(|(&i, &d)| (i as i64 + d).rem_euclid(g.points() as i64) as usize)
                    .collect();
                out[target as usize * s + g.ravel(&idx)] = self.values[m * s + j];
            }
        }
        Weight {
            grid: g,
            values: out,
        }
    }
}

/// Nonnegative real samples on the spatial grid (a fixed-time slice).
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialWeight {
    grid: GridSpec,
    values: Vec<f64>,
}

impl SpatialWeight {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.spatial_len() {
            return Err(Error::SizeMismatch {
                expected: grid.spatial_len(),
                got: values.len(),
            });
        }
        for (node, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite(node));
            }
            if value < 0.0 {
                return Err(Error::NegativeWeight { node, value });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, rule: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.spatial_len())
            .map(|j| rule(&grid.position(j)))
            .collect();
        Self::new(grid, values)
    }

    /// See [`Weight::from_fn_singular`]; neighbours are spatial only.
    pub fn from_fn_singular(grid: GridSpec, rule: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let mut values: Vec<f64> = (0..grid.spatial_len())
            .map(|j| rule(&grid.position(j)))
            .collect();
        let single = GridSpec {
            time_points: 1,
            ..grid
        };
        regularize_singular(&single, &mut values, false);
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn sample_space_time(grid: &GridSpec, rule: impl Fn(&[f64], f64) -> f64) -> Vec<f64> {
    let s = grid.spatial_len();
    let positions: Vec<Vec<f64>> = (0..s).map(|j| grid.position(j)).collect();
    let mut values = Vec::with_capacity(grid.space_time_len());
    for m in 0..grid.time_points() {
        let t = grid.time(m);
        values.extend(positions.iter().map(|x| rule(x, t)));
    }
    values
}

fn regularize_singular(grid: &GridSpec, values: &mut [f64], with_time: bool) {
    let s = grid.spatial_len();
    let nt = values.len() / s;
    let bad: Vec<usize> = (0..values.len())
        .filter(|&i| !values[i].is_finite())
        .collect();
    let snapshot = values.to_vec();
    for node in bad {
        let (m, j) = (node / s, node % s);
        let idx = grid.unravel(j);
        let mut acc = 0.0;
        let mut count = 0usize;
        let mut visit = |v: f64| {
            if v.is_finite() {
                acc += v;
                count += 1;
            }
        };
        for a in 0..grid.dim() {
            for d in [-1i64, 1] {
                let mut nb = idx.clone();
                nb[a] = (idx[a] as i64 + d).rem_euclid(grid.points() as i64) as usize;
                visit(snapshot[m * s + grid.ravel(&nb)]);
            }
        }
        if with_time {
            if m > 0 {
                visit(snapshot[(m - 1) * s + j]);
            }
            if m + 1 < nt {
                visit(snapshot[(m + 1) * s + j]);
            }
        }
        if count > 0 {
            values[node] = acc / count as f64;
        }
    }
}

/// The tuple `(n, gamma, s, p, alpha)` parameterizing a weighted estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateParams {
    pub n: usize,
    pub gamma: f64,
    pub s: f64,
    pub p: f64,
    pub alpha: f64,
}

impl EstimateParams {
    pub fn new(n: usize, gamma: f64, s: f64, p: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        if gamma.is_nan() || gamma < 1.0 {
            return Err(Error::InvalidParameter(format!("gamma must be >= 1, got {gamma}")));
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
        }
        if !s.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidParameter("s and alpha must be finite".into()));
        }
        Ok(Self {
            n,
            gamma,
            s,
            p,
            alpha,
        })
    }

    /// Parameters of the homogeneous estimate, where scaling forces
    /// `alpha = 2s + gamma`.
    pub fn homogeneous(n: usize, gamma: f64, s: f64, p: f64) -> Result<Self> {
        Self::new(n, gamma, s, p, 2.0 * s + gamma)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.alpha == 2.0 * self.s + self.gamma
    }
}

/// Frequency support for seeded random fields.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralBand {
    /// Every lattice frequency.
    Full,
    /// Frequencies with `lo <= |xi| <= hi`.
    Annulus { lo: f64, hi: f64 },
    /// A single lattice mode given by signed per-axis indices.
    Mode(Vec<i64>),
}

impl SpectralBand {
    fn contains(&self, grid: &GridSpec, flat: usize) -> bool {
        match self {
            SpectralBand::Full => true,
            SpectralBand::Annulus { lo, hi } => {
                let r = norm(&grid.frequency(flat));
                r >= *lo && r <= *hi
            }
            SpectralBand::Mode(k) => {
                let idx = grid.unravel(flat);
                k.len() == idx.len()
                    && idx
                        .iter()
                        .zip(k)
                        .all(|(&i, &m)| grid.signed_mode(i) == m)
            }
        }
    }
}

/// Deterministic random field whose spectrum is complex Gaussian on the
/// lattice modes of `band` and zero elsewhere.
pub fn seeded_random_field(grid: &GridSpec, seed: u64, band: &SpectralBand) -> Result<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.spatial_len()];
    let mut any = false;
    for (k, c) in coeffs.iter_mut().enumerate() {
        // draw for every mode so the stream does not depend on the band
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        if band.contains(grid, k) {
            *c = Complex64::new(re, im);
            any = true;
        }
    }
    if !any {
        return Err(Error::EmptyBand);
    }
    Spectrum::new(*grid, coeffs)?.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_grid_examples() {
        let g = GridSpec::new(1, 64, 16.0, 33, 4.0).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.dt(), 0.25);
        assert!(matches!(
            GridSpec::new(1, 63, 16.0, 33, 4.0),
            Err(Error::InvalidGrid(_))
        ));
        let g2 = GridSpec::new(2, 128, 32.0, 65, 8.0).unwrap();
        assert_eq!(g2.spatial_len(), 128 * 128);
        assert!(GridSpec::new(1, 64, 0.0, 33, 4.0).is_err());
        assert!(GridSpec::new(1, 64, 1.0, 33, -1.0).is_err());
        assert!(GridSpec::new(1, 4, 1.0, 33, 1.0).is_err());
        assert!(GridSpec::new(1, 8, 1.0, 1, 1.0).is_err());
    }

    #[test]
    fn time_nodes_include_endpoints() {
        let g = GridSpec::new(1, 8, 1.0, 5, 2.0).unwrap();
        assert_eq!(g.times(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(g.zero_time_index(), Some(2));
        assert_eq!(g.time_weights().iter().sum::<f64>(), 4.0);
    }

    #[test]
    fn index_round_trip() {
        let g = GridSpec::new(2, 16, 3.0, 2, 1.0).unwrap();
        for j in 0..g.spatial_len() {
            assert_eq!(g.ravel(&g.unravel(j)), j);
            let x = g.position(j);
            let idx: Vec<usize> = x.iter().map(|&c| g.axis_index_of(c)).collect();
            assert_eq!(g.ravel(&idx), j);
        }
    }

    #[test]
    fn frequency_lattice() {
        let g = GridSpec::new(1, 8, std::f64::consts::PI, 2, 1.0).unwrap();
        let xi: Vec<f64> = (0..8).map(|k| g.frequency(k)[0]).collect();
        assert_eq!(xi, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn sampling_reads_back_rule() {
        let g = GridSpec::new(1, 32, 4.0, 3, 1.0).unwrap();
        let f = Field::from_fn(g, |x| Complex64::new((-x[0] * x[0] / 2.0).exp(), 0.0)).unwrap();
        for (j, v) in f.values().iter().enumerate() {
            let x = g.position(j)[0];
            assert_eq!(v.re, (-x * x / 2.0).exp());
        }
        let w = Weight::constant(g, 1.0).unwrap();
        assert!(w.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn negative_weight_is_rejected() {
        let g = GridSpec::new(1, 8, 1.0, 3, 1.0).unwrap();
        let err = Weight::from_fn(g, |x, _| x[0]).unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { .. }));
        let err = Weight::from_fn(g, |_, _| f64::NAN).unwrap_err();
        assert!(matches!(err, Error::NonFinite(0)));
    }

    #[test]
    fn singular_node_takes_neighbour_mean() {
        let g = GridSpec::new(1, 8, 4.0, 2, 1.0).unwrap();
        let w = SpatialWeight::from_fn_singular(g, |x| x[0].abs().powf(-0.5)).unwrap();
        let origin = g.axis_index_of(0.0);
        assert_eq!(w.values()[origin], 1.0);
    }

    #[test]
    fn tilted_slab_indicator() {
        let m = 8.0;
        let g = GridSpec::new(1, 256, 6.0, 33, 0.5).unwrap();
        let w = Weight::from_fn(g, |x, t| {
            let inside = t.abs() <= 0.25 && (x[0] - 2.0 * m * t).abs() <= 0.25;
            if inside {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        for mt in 0..g.time_points() {
            let t = g.time(mt);
            for j in 0..g.spatial_len() {
                let x = g.position(j)[0];
                let expect = t.abs() <= 0.25 && (x - 2.0 * m * t).abs() <= 0.25;
                assert_eq!(w.values()[mt * g.spatial_len() + j] == 1.0, expect);
            }
        }
    }

    #[test]
    fn seeded_fields_are_deterministic() {
        let g = GridSpec::new(2, 16, 4.0, 2, 1.0).unwrap();
        let a = seeded_random_field(&g, 7, &SpectralBand::Full).unwrap();
        let b = seeded_random_field(&g, 7, &SpectralBand::Full).unwrap();
        assert_eq!(a, b);
        let c = seeded_random_field(&g, 8, &SpectralBand::Full).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn empty_band_is_an_error() {
        let g = GridSpec::new(1, 16, 4.0, 2, 1.0).unwrap();
        let band = SpectralBand::Annulus { lo: 0.1, hi: 0.2 };
        assert_eq!(seeded_random_field(&g, 1, &band), Err(Error::EmptyBand));
    }

    #[test]
    fn single_mode_is_plane_wave() {
        let g = GridSpec::new(1, 32, std::f64::consts::PI, 2, 1.0).unwrap();
        let f = seeded_random_field(&g, 3, &SpectralBand::Mode(vec![3])).unwrap();
        let amp = f.values()[0].norm();
        for (j, v) in f.values().iter().enumerate() {
            assert!((v.norm() - amp).abs() < 1e-12);
            let x = g.position(j)[0];
            let phase = (v / f.values()[0]).arg();
            let expect = Complex64::from_polar(1.0, 3.0 * (x + std::f64::consts::PI)).arg();
            assert!((Complex64::from_polar(1.0, phase - expect) - 1.0).norm() < 1e-10);
        }
    }
}

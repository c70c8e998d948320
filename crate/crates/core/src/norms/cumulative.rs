//! Exact box integrals of cell-constant densities.
//!
//! Every sample is treated as constant on its cell: spatial cells are
//! `[x_j - dx/2, x_j + dx/2)` (periodic), time cells are
//! `[t_m - dt/2, t_m + dt/2]` clipped to `[-T, T]`, so the end cells have
//! length `dt/2` and the total integral agrees with the trapezoid rule.
//! The continuous cumulative integral is multilinear inside each cell, so an
//! arbitrary box integral is an inclusion-exclusion of interpolated corner
//! values of a prefix-sum table.

use crate::grid::GridSpec;

/// Cell edges of one axis.
#[derive(Debug, Clone)]
pub(crate) struct Axis {
    edges: Vec<f64>,
    periodic: bool,
}

impl Axis {
    pub(crate) fn spatial(grid: &GridSpec) -> Self {
        let dx = grid.dx();
        let start = -grid.half_width() - 0.5 * dx;
        let edges = (0..=grid.points())
            .map(|i| start + i as f64 * dx)
            .collect();
        Self {
            edges,
            periodic: true,
        }
    }

    pub(crate) fn time(grid: &GridSpec) -> Self {
        let nt = grid.time_points();
        let (t, dt) = (grid.half_time(), grid.dt());
        let mut edges = Vec::with_capacity(nt + 1);
        edges.push(-t);
        for m in 1..nt {
            edges.push(-t + (m as f64 - 0.5) * dt);
        }
        edges.push(t);
        Self {
            edges,
            periodic: false,
        }
    }

    pub(crate) fn cells(&self) -> usize {
        self.edges.len() - 1
    }

    pub(crate) fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    fn first(&self) -> f64 {
        self.edges[0]
    }

    fn last(&self) -> f64 {
        self.edges[self.cells()]
    }

    /// Cell index and fractional offset of a point inside `[first, last]`.
    fn locate(&self, x: f64) -> (usize, f64) {
        let n = self.cells();
        if x <= self.first() {
            return (0, 0.0);
        }
        if x >= self.last() {
            return (n - 1, 1.0);
        }
        // edges are uniform except possibly the two end cells
        let interior = self.width(n / 2);
        let guess = ((x - self.edges[1]) / interior).floor() as i64 + 1;
        let mut i = guess.clamp(0, n as i64 - 1) as usize;
        while i > 0 && x < self.edges[i] {
            i -= 1;
        }
        while i + 1 < n && x >= self.edges[i + 1] {
            i += 1;
        }
        let f = ((x - self.edges[i]) / self.width(i)).clamp(0.0, 1.0);
        (i, f)
    }

    fn push_cumulative(&self, x: f64, sign: f64, out: &mut TermList) {
        let (i, f) = self.locate(x);
        if f < 1.0 {
            out.push(i, sign * (1.0 - f));
        }
        if f > 0.0 {
            out.push(i + 1, sign * f);
        }
    }

    fn push_interval(&self, a: f64, b: f64, out: &mut TermList) {
        self.push_cumulative(b, 1.0, out);
        self.push_cumulative(a, -1.0, out);
    }

    /// Table terms `(index, coefficient)` whose weighted sum integrates the
    /// axis over `[a, b]`.
    pub(crate) fn interval_terms(&self, a: f64, b: f64) -> TermList {
        let mut out = TermList::default();
        if self.periodic {
            let period = self.last() - self.first();
            let shift = ((a - self.first()) / period).floor() * period;
            let (a, b) = (a - shift, (b - shift).min(a - shift + period));
            if b <= self.last() {
                self.push_interval(a, b, &mut out);
            } else {
                self.push_interval(a, self.last(), &mut out);
                self.push_interval(self.first(), b - period, &mut out);
            }
        } else {
            let (a, b) = (a.max(self.first()), b.min(self.last()));
            if a < b {
                self.push_interval(a, b, &mut out);
            }
        }
        out
    }
}

/// Prefix-sum table of `density * cell measure` over a product of axes.
#[derive(Debug, Clone)]
pub(crate) struct BoxIntegrator {
    axes: Vec<Axis>,
    strides: Vec<usize>,
    table: Vec<f64>,
}

impl BoxIntegrator {
    /// `density` is row-major over the axes in order (axis 0 slowest).
    pub(crate) fn new(axes: Vec<Axis>, density: &[f64]) -> Self {
        let shape: Vec<usize> = axes.iter().map(|a| a.cells() + 1).collect();
        let mut strides = vec![1usize; axes.len()];
        for a in (0..axes.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * shape[a + 1];
        }
        let total: usize = shape.iter().product();
        let mut table = vec![0.0; total];
        let cell_shape: Vec<usize> = axes.iter().map(|a| a.cells()).collect();
        debug_assert_eq!(density.len(), cell_shape.iter().product::<usize>());
        let mut idx = vec![0usize; axes.len()];
        for &d in density {
            let measure: f64 = axes.iter().zip(&idx).map(|(a, &i)| a.width(i)).product();
            let flat: usize = idx.iter().zip(&strides).map(|(&i, &s)| (i + 1) * s).sum();
            table[flat] = d * measure;
            for a in (0..idx.len()).rev() {
                idx[a] += 1;
                if idx[a] < cell_shape[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        // running sums along each axis turn cell masses into cumulative integrals
        for (a, &stride) in strides.iter().enumerate() {
            let len = shape[a];
            for flat in 0..total {
                if (flat / stride) % len != 0 {
                    table[flat] += table[flat - stride];
                }
            }
        }
        Self {
            axes,
            strides,
            table,
        }
    }

    pub(crate) fn axis(&self, a: usize) -> &Axis {
        &self.axes[a]
    }

    /// Integral over the box whose per-axis terms are given.
    pub(crate) fn integrate(&self, terms: &[&TermList]) -> f64 {
        self.accumulate(terms, 0, 0, 1.0)
    }

    fn accumulate(&self, terms: &[&TermList], axis: usize, offset: usize, coeff: f64) -> f64 {
        if axis == terms.len() {
            return coeff * self.table[offset];
        }
        terms[axis]
            .iter()
            .map(|&(i, c)| self.accumulate(terms, axis + 1, offset + i * self.strides[axis], coeff * c))
            .sum()
    }
}

/// Fixed-capacity list of cumulative-table terms (at most two periodic
/// pieces with four terms each).
#[derive(Debug, Clone, Default)]
pub(crate) struct TermList {
    len: usize,
    items: [(usize, f64); 8],
}

impl TermList {
    fn push(&mut self, index: usize, coeff: f64) {
        self.items[self.len] = (index, coeff);
        self.len += 1;
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = &(usize, f64)> {
        self.items[..self.len].iter()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.len == 0
    }
}

//! Centred maximal function and dyadic `A_2` constants.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SpatialWeight, Weight};

/// `M_q w(x, t) = sup_k ( |Q_k(x)|^{-1} \int_{Q_k(x)} w(., t)^q )^{1/q}`,
/// slice by slice in time, over the cubes `Q_k(x)` made of the `(2k+1)^n`
/// grid cells centred at the node `x` (`2k + 1 < N`, periodic).
///
/// The cube sums are separable circular sliding sums, so a slice costs
/// `O(n N^{n+1})`.
pub fn maximal_function(w: &Weight, q: f64) -> Result<Weight> {
    if !(q.is_finite() && q > 1.0) {
        return Err(Error::InvalidParameter(format!("maximal exponent q must be > 1, got {q}")));
    }
    let g = *w.grid();
    let slices: Vec<Vec<f64>> = (0..g.time_points())
        .into_par_iter()
        .map(|m| slice_maximal(&g, w.slice(m).values(), q))
        .collect();
    Weight::new(g, slices.concat())
}

fn slice_maximal(g: &GridSpec, values: &[f64], q: f64) -> Vec<f64> {
    let n = g.dim();
    let density: Vec<f64> = values.iter().map(|v| v.powf(q)).collect();
    // the single-cell cube reproduces w itself
    let mut best = values.to_vec();
    for k in 1..g.points() / 2 {
        let mut sums = density.clone();
        for axis in 0..n {
            along_axis(g, &mut sums, axis, |line| centred_window_sum(line, k));
        }
        let volume = ((2 * k + 1) as f64).powi(n as i32);
        for (b, s) in best.iter_mut().zip(&sums) {
            *b = b.max((s / volume).max(0.0).powf(1.0 / q));
        }
    }
    best
}

/// Applies `op` to every grid line parallel to `axis` (row-major layout,
/// last axis fastest).
fn along_axis(g: &GridSpec, data: &mut [f64], axis: usize, op: impl Fn(&[f64]) -> Vec<f64>) {
    let n = g.points();
    let stride = n.pow((g.dim() - 1 - axis) as u32);
    let mut line = vec![0.0; n];
    for base in 0..data.len() {
        if !(base / stride).is_multiple_of(n) {
            continue;
        }
        for (i, v) in line.iter_mut().enumerate() {
            *v = data[base + i * stride];
        }
        for (i, v) in op(&line).into_iter().enumerate() {
            data[base + i * stride] = v;
        }
    }
}

/// `out[i] = sum_{|j| <= k} line[(i + j) mod N]`.
fn centred_window_sum(line: &[f64], k: usize) -> Vec<f64> {
    let n = line.len();
    let at = |i: usize| line[i % n];
    let mut acc: f64 = (0..=2 * k).map(|j| at(j + n - k)).sum();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(acc);
        acc += at(i + k + 1) - at(i + n - k);
    }
    out
}

/// `sup_Q (avg_Q w)(avg_Q w^{-1})` over grid-aligned dyadic cubes of side
/// `2^l dx`. Every sample must be strictly positive.
pub fn a2_constant(w: &SpatialWeight) -> Result<f64> {
    if let Some(node) = w.values().iter().position(|&v| v <= 0.0) {
        return Err(Error::ZeroWeight(node));
    }
    let g = *w.grid();
    let n = g.dim();
    let mut best = 1.0f64;
    let mut side = 1usize;
    while side <= g.points() {
        let blocks_per_axis = g.points() / side;
        let blocks = blocks_per_axis.pow(n as u32);
        let mut sum_w = vec![0.0; blocks];
        let mut sum_inv = vec![0.0; blocks];
        let mut lo = vec![f64::INFINITY; blocks];
        let mut hi = vec![f64::NEG_INFINITY; blocks];
        for (j, &v) in w.values().iter().enumerate() {
            let b = g
                .unravel(j)
                .iter()
                .fold(0usize, |acc, &i| acc * blocks_per_axis + i / side);
            sum_w[b] += v;
            sum_inv[b] += 1.0 / v;
            lo[b] = lo[b].min(v);
            hi[b] = hi[b].max(v);
        }
        let cells = side.pow(n as u32) as f64;
        for b in 0..blocks {
            // constant blocks contribute exactly 1
            if lo[b] < hi[b] {
                best = best.max(sum_w[b] * sum_inv[b] / (cells * cells));
            }
        }
        side *= 2;
    }
    Ok(best)
}

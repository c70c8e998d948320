use thiserror::Error;

/// Errors raised by the numerical laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("size mismatch: expected {expected} samples, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("non-finite sample at node {0}")]
    NonFinite(usize),
    #[error("negative weight sample {value} at node {node}")]
    NegativeWeight { node: usize, value: f64 },
    #[error("empty spectral band")]
    EmptyBand,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),
    #[error("weight vanishes at node {0}")]
    ZeroWeight(usize),
    #[error("inconsistent region classification at (s={s}, p={p}): {detail}")]
    Inconsistent { s: f64, p: f64, detail: String },
    #[error("potential has a non-zero imaginary part at node {0}")]
    NonRealPotential(usize),
    #[error("picard iteration diverged after {iterations} iterations (contraction estimates {contraction:?})")]
    Divergence {
        iterations: usize,
        contraction: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Numerical laboratory for weighted Strichartz and smoothing estimates of
//! fractional Schrödinger, wave and Airy-type flows.
//!
//! * [`grid`]: periodic grids, sampled fields and weights, seeded test data
//! * [`spectral`]: discrete Fourier transform, propagators, Littlewood-Paley pieces
//! * [`norms`]: Sobolev, weighted `L^2`, Morrey-Campanato type norms, maximal
//!   functions and `A_2` constants
//! * [`estimates`]: estimate ratios, the `(s, 1/p)` region classifier and the
//!   wave-packet sharpness experiment
//! * [`wellposed`]: Duhamel quadrature and Picard solvers for perturbed equations

pub mod error;
pub mod estimates;
pub mod fit;
pub mod grid;
pub mod norms;
pub mod spectral;
pub mod wellposed;

pub use error::{Error, Result};
pub use grid::{
    seeded_random_field, EstimateParams, Field, GridSpec, SpaceTimeField, SpatialWeight,
    SpectralBand, Weight,
};
pub use spectral::Spectrum;

//! Estimate-verification experiments.
//!
//! * [`admissible_region`] / [`kdv_admissible`]: closed-form classification of
//!   `(s, 1/p)` into proven-true, proven-false and open
//! * ratio operations: left over right side of each weighted estimate
//! * the wave-packet counterexample and its sharpness sweep
//! * dyadic homogeneity of the weight norm and the 1-D smoothing identity

mod homogeneity;
mod ratios;
mod region;
mod sharpness;
mod smoothing;

pub use homogeneity::{dyadic_rescale, scaling_homogeneity_check};
pub use ratios::{
    frequency_localized_admissible, frequency_localized_ratio, frequency_localized_ratio_with,
    frequency_localized_sweep,
    homogeneous_ratio, homogeneous_ratio_with, inhomogeneous_admissible, inhomogeneous_ratio,
    inhomogeneous_ratio_with, InhomogeneousKind, RatioReport,
};
pub use region::{
    admissible_region, kdv_admissible, kdv_lattice, region_lattice, RegionPoint, RegionVerdict, Source, Status,
};
pub use sharpness::{
    build_counterexample, bump, counterexample_lower_bound, sharpness_experiment,
    CounterexampleSpec, SharpnessReport, SharpnessRow, PROBE_POINTS,
};
pub use smoothing::{smoothing_family, smoothing_ratio};

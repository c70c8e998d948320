//! Closed-form classification of `(s, 1/p)` for the weighted estimate
//! `||e^{-itA} f||_{L^2(w)} <= C ||w||^{1/2}_{MC^{2s+g, p}_g} ||f||_{H^s}`.

use crate::error::{Error, Result};

/// Whether the estimate is known to hold, known to fail, or undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    ProvenTrue,
    ProvenFalse,
    Open,
}

impl Status {
    /// `1` true, `-1` false, `0` open.
    pub fn code(self) -> i8 {
        match self {
            Status::ProvenTrue => 1,
            Status::ProvenFalse => -1,
            Status::Open => 0,
        }
    }
}

/// The closed-form condition that decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Schrodinger range `0 < s < n/2`, `max{1, (n+2)/(4s+2)} < p <= (n+2)/(2s+2)`.
    SchrodingerRange,
    /// `L^p` critical line `p = (n+g)/(2s+g)` via Holder and Strichartz.
    LpCriticalLine,
    /// Wave-packet counterexample: `1/p > (4s+2)/(n+2)` and `1/p > 2s`.
    WavePacket,
    /// Negative regularity `-1 < s < 0` below the critical line.
    NegativeRegularity,
    /// Earlier true region `n/4 <= s < n/2`, `1 < p <= (n+2)/(2s+2)`.
    EarlierTrue,
    /// Earlier false region `0 <= s < n/4`, `p < (n+4)/(4s+4)`.
    EarlierFalse,
    /// Higher-order range for `g > 1`, `g != 2`.
    HigherOrderRange,
    /// Wave range for `g = 1`, `n >= 2`.
    WaveRange,
    /// Airy/KdV range for `g = 2k+1`, `n = 1`.
    AiryRange,
    /// `p > (n+g)/alpha`: the weight class only contains `w = 0`.
    TrivialClass,
    /// No result applies.
    None,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::SchrodingerRange => "schrodinger-range",
            Source::LpCriticalLine => "lp-critical-line",
            Source::WavePacket => "wave-packet-counterexample",
            Source::NegativeRegularity => "negative-regularity",
            Source::EarlierTrue => "earlier-true-region",
            Source::EarlierFalse => "earlier-false-region",
            Source::HigherOrderRange => "higher-order-range",
            Source::WaveRange => "wave-range",
            Source::AiryRange => "airy-range",
            Source::TrivialClass => "trivial-class",
            Source::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionVerdict {
    pub status: Status,
    pub source: Source,
}

impl RegionVerdict {
    fn open(source: Source) -> Self {
        Self {
            status: Status::Open,
            source,
        }
    }
}

fn check(gamma: f64, s: f64, p: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma >= 1.0) {
        return Err(Error::InvalidParameter(format!("gamma must be >= 1, got {gamma}")));
    }
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
    }
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!("s must be finite, got {s}")));
    }
    Ok(())
}

/// Relative tolerance used for the equality `p = critical value`.
const LINE_TOL: f64 = 1e-12;

fn on_line(p: f64, critical: f64) -> bool {
    (p - critical).abs() <= LINE_TOL * critical.abs().max(1.0)
}

/// Combines every applicable claim; a true and a false claim at the same
/// point is an inconsistency error.
fn combine(s: f64, p: f64, claims: &[(bool, Status, Source)]) -> Result<RegionVerdict> {
    let truth = claims.iter().find(|c| c.0 && c.1 == Status::ProvenTrue);
    let falsity = claims.iter().find(|c| c.0 && c.1 == Status::ProvenFalse);
    match (truth, falsity) {
        (Some(t), Some(f)) => Err(Error::Inconsistent {
            s,
            p,
            detail: format!("{} claims true, {} claims false", t.2.label(), f.2.label()),
        }),
        (Some(&(_, status, source)), None) | (None, Some(&(_, status, source))) => {
            Ok(RegionVerdict { status, source })
        }
        (None, None) => Ok(RegionVerdict::open(Source::None)),
    }
}

/// Classifies the homogeneous estimate with `alpha = 2s + g` at `(s, p)`.
pub fn admissible_region(gamma: f64, n: usize, s: f64, p: f64) -> Result<RegionVerdict> {
    check(gamma, s, p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let nf = n as f64;
    let alpha = 2.0 * s + gamma;
    if alpha > 0.0 && p > (nf + gamma) / alpha && !on_line(p, (nf + gamma) / alpha) {
        return Ok(RegionVerdict::open(Source::TrivialClass));
    }
    let inv_p = 1.0 / p;
    let claims: Vec<(bool, Status, Source)> = if gamma == 2.0 {
        let upper = (nf + 2.0) / (2.0 * s + 2.0);
        let at_or_below_upper = p <= upper || on_line(p, upper);
        vec![
            (
                s > 0.0
                    && s < nf / 2.0
                    && p > 1.0_f64.max((nf + 2.0) / (4.0 * s + 2.0))
                    && at_or_below_upper,
                Status::ProvenTrue,
                Source::SchrodingerRange,
            ),
            (
                (0.0..nf / 2.0).contains(&s) && on_line(p, upper),
                Status::ProvenTrue,
                Source::LpCriticalLine,
            ),
            (
                s >= nf / 4.0 && s < nf / 2.0 && p > 1.0 && at_or_below_upper,
                Status::ProvenTrue,
                Source::EarlierTrue,
            ),
            (
                s > -1.0
                    && s < nf / 4.0
                    && inv_p > (4.0 * s + 2.0) / (nf + 2.0)
                    && inv_p > 2.0 * s,
                Status::ProvenFalse,
                Source::WavePacket,
            ),
            (
                s > -1.0 && s < 0.0 && at_or_below_upper,
                Status::ProvenFalse,
                Source::NegativeRegularity,
            ),
            (
                (0.0..nf / 4.0).contains(&s) && p < (nf + 4.0) / (4.0 * s + 4.0),
                Status::ProvenFalse,
                Source::EarlierFalse,
            ),
        ]
    } else if gamma > 1.0 {
        let lower_s = -(gamma - 2.0) * nf / (2.0 * (nf + 2.0));
        let lower_p = (nf + 2.0 * (gamma - 1.0)) / (4.0 * s + 2.0 * (gamma - 1.0));
        let upper = (nf + gamma) / (2.0 * s + gamma);
        vec![(
            s > lower_s
                && s < nf / 2.0
                && p > 1.0_f64.max(lower_p)
                && (p <= upper || on_line(p, upper)),
            Status::ProvenTrue,
            Source::HigherOrderRange,
        )]
    } else {
        let upper = (nf + 1.0) / (2.0 * s + 1.0);
        vec![
            (
                n >= 2
                    && s > 0.5
                    && s < nf / 2.0
                    && p > 1.0_f64.max((nf + 1.0) / (4.0 * s))
                    && (p <= upper || on_line(p, upper)),
                Status::ProvenTrue,
                Source::WaveRange,
            ),
            (
                n >= 2 && (0.5..nf / 2.0).contains(&s) && on_line(p, upper),
                Status::ProvenTrue,
                Source::LpCriticalLine,
            ),
        ]
    };
    combine(s, p, &claims)
}

/// Classifies `||e^{-t d_x^{2k+1}} f||_{L^2(w)} <= C ||w||^{1/2} ||f||_{H^s}`
/// with `w` in the class of order `2(s+k)+1`, scale `2k+1`, on the line.
pub fn kdv_admissible(k: u32, s: f64, p: f64) -> Result<RegionVerdict> {
    if k == 0 {
        return Err(Error::InvalidParameter("airy order k must be >= 1".into()));
    }
    let kf = f64::from(k);
    check(2.0 * kf + 1.0, s, p)?;
    let upper = (2.0 * kf + 2.0) / (2.0 * (s + kf) + 1.0);
    let claims = [(
        s > -(2.0 * kf - 1.0) / 6.0
            && s < 0.5
            && p > 1.0_f64.max((4.0 * kf + 1.0) / (4.0 * (s + kf)))
            && (p <= upper || on_line(p, upper)),
        Status::ProvenTrue,
        Source::AiryRange,
    )];
    combine(s, p, &claims)
}

/// One lattice point of a region scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub s: f64,
    pub inv_p: f64,
    pub verdict: RegionVerdict,
}

/// Cell-centred `size x size` lattice over `s in (-1, n/2)` and
/// `1/p in (0, 1)`, sorted by `(s, 1/p)`.
pub fn region_lattice(gamma: f64, n: usize, size: usize) -> Result<Vec<RegionPoint>> {
    lattice(size, n as f64 / 2.0, |s, p| admissible_region(gamma, n, s, p))
}

/// The [`kdv_admissible`] classification on the lattice of
/// [`region_lattice`] for `n = 1`.
pub fn kdv_lattice(k: u32, size: usize) -> Result<Vec<RegionPoint>> {
    lattice(size, 0.5, |s, p| kdv_admissible(k, s, p))
}

fn lattice(
    size: usize,
    s_hi: f64,
    classify: impl Fn(f64, f64) -> Result<RegionVerdict>,
) -> Result<Vec<RegionPoint>> {
    if size == 0 {
        return Err(Error::InvalidParameter("lattice size must be positive".into()));
    }
    let s_lo = -1.0;
    let mut out = Vec::with_capacity(size * size);
    for i in 0..size {
        let s = s_lo + (i as f64 + 0.5) * (s_hi - s_lo) / size as f64;
        for j in 0..size {
            let inv_p = (j as f64 + 0.5) / size as f64;
            let verdict = classify(s, 1.0 / inv_p)?;
            out.push(RegionPoint { s, inv_p, verdict });
        }
    }
    Ok(out)
}

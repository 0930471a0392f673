//! Closed-form intersections checked against the brute-force oracle.
//!
//! A disagreement is returned as data in [`ComparisonVerdict`], never as an
//! error: for small bases the oracle may find intersections off the
//! bisectrix that the closed form does not look for.

use alloc::vec::Vec;

use crate::error::Result;
use crate::intersect::{diagonal_intersections, Base, IntersectionClass, IntersectionReport};
use crate::lambert::EvalConfig;
use lambertw_oracle::all_intersections_numeric;

pub use lambertw_oracle::DEFAULT_SAMPLES;

/// Bisection tolerance for oracle roots.
pub const ORACLE_ABS_TOL: f64 = 1e-12;

/// Smallest right end of the oracle scan window.
pub const MIN_X_MAX: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedPair {
    pub closed_form: f64,
    pub oracle: f64,
    /// `|closed_form - oracle|`
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonVerdict {
    pub base: Base,
    pub class: IntersectionClass,
    pub x_max: f64,
    pub samples: usize,
    pub oracle_roots: Vec<f64>,
    pub closed_form: Vec<f64>,
    /// Ascending by closed-form abscissa.
    pub pairs: Vec<MatchedPair>,
    pub unmatched_oracle: Vec<f64>,
    pub unmatched_closed_form: Vec<f64>,
    /// The two root lists have different lengths.
    pub count_mismatch: bool,
}

impl ComparisonVerdict {
    pub fn max_delta(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.delta).reduce(f64::max)
    }
}

/// `max(50, 4 * largest closed-form root)`.
pub fn default_x_max(report: &IntersectionReport) -> f64 {
    report
        .points
        .iter()
        .map(|p| 4.0 * p.x)
        .fold(MIN_X_MAX, f64::max)
}

/// Runs both paths for `b` and pairs their roots greedily, closest first.
/// `x_max = None` uses [`default_x_max`].
pub fn compare_with_closed_form(
    b: Base,
    x_max: Option<f64>,
    samples: usize,
) -> Result<ComparisonVerdict> {
    let report = diagonal_intersections(b, &EvalConfig::default())?;
    let x_max = x_max.unwrap_or_else(|| default_x_max(&report));
    let oracle_roots = all_intersections_numeric(b.get(), x_max, samples, ORACLE_ABS_TOL)?;
    let closed_form: Vec<f64> = report.points.iter().map(|p| p.x).collect();

    let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
    for (i, &c) in closed_form.iter().enumerate() {
        for (j, &o) in oracle_roots.iter().enumerate() {
            candidates.push((i, j, libm::fabs(c - o)));
        }
    }
    candidates.sort_by(|a, b| a.2.total_cmp(&b.2));

    let mut closed_used = alloc::vec![false; closed_form.len()];
    let mut oracle_used = alloc::vec![false; oracle_roots.len()];
    let mut pairs = Vec::new();
    for (i, j, delta) in candidates {
        if closed_used[i] || oracle_used[j] {
            continue;
        }
        closed_used[i] = true;
        oracle_used[j] = true;
        pairs.push(MatchedPair {
            closed_form: closed_form[i],
            oracle: oracle_roots[j],
            delta,
        });
    }
    pairs.sort_by(|a, b| a.closed_form.total_cmp(&b.closed_form));

    let unmatched = |xs: &[f64], used: &[bool]| -> Vec<f64> {
        xs.iter()
            .zip(used)
            .filter(|(_, &u)| !u)
            .map(|(&x, _)| x)
            .collect()
    };
    let unmatched_oracle = unmatched(&oracle_roots, &oracle_used);
    let unmatched_closed_form = unmatched(&closed_form, &closed_used);

    Ok(ComparisonVerdict {
        base: b,
        class: report.class,
        x_max,
        samples,
        count_mismatch: oracle_roots.len() != closed_form.len(),
        oracle_roots,
        closed_form,
        pairs,
        unmatched_oracle,
        unmatched_closed_form,
    })
}

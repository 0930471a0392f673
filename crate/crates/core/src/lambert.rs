//! The two real branches of the Lambert W function.
//!
//! `W(z)` solves `w e^w = z`. The map `w e^w` has its global minimum `-1/e`
//! at `w = -1`, so for `-1/e < z < 0` there are two real solutions:
//! the principal branch `W0 >= -1` and the lower branch `W-1 <= -1`. They
//! meet in a double root at `z = -1/e`. For `z >= 0` only `W0` is real.
//!
//! Evaluation seeds Halley's iteration from a region-dependent approximation
//! and falls back to bisection on a certified bracket if the iteration
//! leaves the branch or stops contracting.

use core::f64::consts::E;
use core::fmt;

use crate::error::{domain, Error, Result};

/// `1/e` split into a double and its rounding error, so `z + 1/e` can be
/// formed without cancellation near the branch point.
const INV_E_HI: f64 = 0.367_879_441_171_442_33;
const INV_E_LO: f64 = -1.242_875_367_278_836_3e-17;

/// The branch point `-1/e`, rounded to the nearest double. It sits about
/// `1.2e-17` below the true branch point and is accepted through the
/// clamping window.
pub const BRANCH_POINT: f64 = -INV_E_HI;

/// Distance from the branch point inside which the residual test is
/// replaced by agreement with the branch-point series.
pub const SERIES_ACCEPT_WINDOW: f64 = 1e-6;
/// Allowed distance between the result and the series inside that window.
pub const SERIES_ACCEPT_TOL: f64 = 1e-6;

/// Seeds come from the branch-point series while `e z + 1` is below this.
const SERIES_SEED_LIMIT: f64 = 0.02;
const BISECTION_MAX_STEPS: u32 = 1100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchId {
    /// Principal branch, `w >= -1`, real for `z >= -1/e`.
    W0,
    /// Lower branch, `w <= -1`, real for `-1/e <= z < 0`.
    Wm1,
}

impl BranchId {
    /// Conventional subscript: `0` or `-1`.
    pub fn index(self) -> i32 {
        match self {
            BranchId::W0 => 0,
            BranchId::Wm1 => -1,
        }
    }

    pub fn from_index(k: i32) -> Option<Self> {
        match k {
            0 => Some(BranchId::W0),
            -1 => Some(BranchId::Wm1),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchId::W0 => "W0",
            BranchId::Wm1 => "Wm1",
        }
    }

    fn in_range(self, w: f64) -> bool {
        match self {
            BranchId::W0 => w >= -1.0,
            BranchId::Wm1 => w <= -1.0,
        }
    }

    fn clamp_to_range(self, w: f64) -> f64 {
        match self {
            BranchId::W0 => w.max(-1.0),
            BranchId::Wm1 => w.min(-1.0),
        }
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Residual bound relative to `max(1, |z|)`.
    pub rel_tol: f64,
    pub max_iter: u32,
    /// Arguments this far below `-1/e` are treated as `-1/e`.
    pub branch_point_window: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: 1e-14,
            max_iter: 50,
            branch_point_window: 1e-10,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return domain("rel_tol must be positive", self.rel_tol);
        }
        if self.max_iter < 1 {
            return domain("max_iter must be at least 1", self.max_iter as f64);
        }
        if !(self.branch_point_window >= 0.0 && self.branch_point_window.is_finite()) {
            return domain(
                "branch_point_window must be non-negative",
                self.branch_point_window,
            );
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    /// The argument actually solved for, after clamping to the branch point.
    pub z: f64,
    pub branch: BranchId,
    pub w: f64,
    /// `|w e^w - z|`
    pub residual: f64,
    pub iterations: u32,
}

/// The forward map `w e^w`.
pub fn wexp(w: f64) -> Result<f64> {
    if !w.is_finite() {
        return domain("w must be finite", w);
    }
    let v = w * libm::exp(w);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { w })
    }
}

/// `z + 1/e` computed with the split constant.
fn branch_offset(z: f64) -> f64 {
    (z + INV_E_HI) + INV_E_LO
}

/// Validates `z` for `branch` and returns `(z, z + 1/e)`, with arguments
/// inside the window below `-1/e` clamped onto the branch point.
fn normalize(z: f64, branch: BranchId, window: f64) -> Result<(f64, f64)> {
    if !z.is_finite() {
        return domain("z must be finite", z);
    }
    let mut z = z;
    let mut offset = branch_offset(z);
    if offset < 0.0 {
        if offset >= -window {
            z = BRANCH_POINT;
            offset = 0.0;
        } else {
            return domain("z is below the branch point -1/e", z);
        }
    }
    if branch == BranchId::Wm1 && z >= 0.0 {
        return domain("W-1 is real only for -1/e <= z < 0", z);
    }
    Ok((z, offset))
}

/// `-1 + p - p^2/3 + 11 p^3 / 72` with `p = ±sqrt(2 (e z + 1))`, the sign
/// chosen by branch. `offset` is `z + 1/e`.
fn series_at_offset(offset: f64, branch: BranchId) -> f64 {
    let p = libm::sqrt(2.0 * E * offset.max(0.0));
    let p = match branch {
        BranchId::W0 => p,
        BranchId::Wm1 => -p,
    };
    -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
}

/// Four-term expansion of `W` about the branch point.
pub fn branch_point_series(z: f64, branch: BranchId) -> Result<f64> {
    let (_, offset) = normalize(z, branch, EvalConfig::default().branch_point_window)?;
    Ok(series_at_offset(offset, branch))
}

fn seed(z: f64, offset: f64, branch: BranchId) -> f64 {
    if E * offset < SERIES_SEED_LIMIT {
        return series_at_offset(offset, branch);
    }
    let w = match branch {
        BranchId::W0 => {
            if z > 3.0 {
                let l = libm::log(z);
                l - libm::log(l)
            } else if libm::fabs(z) < 1e-2 {
                z
            } else {
                // Winitzki's approximation, within a few percent on (-1/e, 3].
                let l = libm::log1p(z);
                l * (1.0 - libm::log1p(l) / (2.0 + l))
            }
        }
        BranchId::Wm1 => {
            if z > -0.02 {
                let l = libm::log(-z);
                l - libm::log(-l)
            } else {
                // Midpoint of the bounds -1 - sqrt(2u) - u < W-1 < -1 - sqrt(2u) - 2u/3
                // with z = -exp(-u - 1).
                let u = -1.0 - libm::log(-z);
                -1.0 - libm::sqrt(2.0 * u) - 5.0 * u / 6.0
            }
        }
    };
    branch.clamp_to_range(w)
}

/// Starting point for the refinement, already on the branch's half-line.
pub fn initial_guess(z: f64, branch: BranchId) -> Result<f64> {
    let (z, offset) = normalize(z, branch, EvalConfig::default().branch_point_window)?;
    Ok(seed(z, offset, branch))
}

/// Residual accepted as converged. Beyond the requested relative bound the
/// only slack is what rounding in `w e^w` forces on the closest double.
fn accept_bound(z: f64, w: f64, rel_tol: f64) -> f64 {
    let az = libm::fabs(z);
    let rounding = 2.0 * f64::EPSILON * az * (libm::fabs(1.0 + w) + 2.0);
    let subnormal = 8.0 * (1.0 + libm::fabs(w)) * f64::from_bits(1);
    (rel_tol * az).max(rounding).max(subnormal)
}

fn residual_of(w: f64, z: f64) -> f64 {
    libm::fabs(w * libm::exp(w) - z)
}

/// Evaluates `W` on `branch` at `z`.
///
/// On success the residual is at most `rel_tol * |z|` (hence below
/// `rel_tol * max(1, |z|)`), except where rounding in `w e^w` makes that
/// unreachable for every double. Within [`SERIES_ACCEPT_WINDOW`] of the
/// branch point a result agreeing with the branch-point series to
/// [`SERIES_ACCEPT_TOL`] is also accepted.
pub fn eval_w(z: f64, branch: BranchId, config: &EvalConfig) -> Result<EvalResult> {
    config.validate()?;
    let (z, offset) = normalize(z, branch, config.branch_point_window)?;
    let done = |w: f64, iterations: u32| EvalResult {
        z,
        branch,
        w,
        residual: residual_of(w, z),
        iterations,
    };

    if offset == 0.0 {
        return Ok(done(-1.0, 0));
    }
    if z == 0.0 {
        return Ok(done(0.0, 0));
    }

    let mut iterations = 0u32;
    let mut w = seed(z, offset, branch);
    let mut prev_f = f64::INFINITY;
    let mut converged = false;
    for _ in 0..config.max_iter {
        let ew = libm::exp(w);
        let f = w * ew - z;
        if libm::fabs(f) <= accept_bound(z, w, config.rel_tol) {
            converged = true;
            break;
        }
        if iterations >= 2 && libm::fabs(f) >= libm::fabs(prev_f) {
            break;
        }
        prev_f = f;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let next = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        iterations += 1;
        if !next.is_finite() || !branch.in_range(next) || next == w {
            break;
        }
        w = next;
    }
    if !converged && libm::fabs(w * libm::exp(w) - z) <= accept_bound(z, w, config.rel_tol) {
        converged = true;
    }

    let near_branch_point = offset <= SERIES_ACCEPT_WINDOW;
    let series_ok = |w: f64| {
        near_branch_point
            && branch.in_range(w)
            && libm::fabs(w - series_at_offset(offset, branch)) <= SERIES_ACCEPT_TOL
    };
    if converged || series_ok(w) {
        return Ok(done(w, iterations));
    }

    let (w, steps, ok) = bisect_fallback(z, branch, config.rel_tol);
    iterations += steps;
    if ok || series_ok(w) {
        Ok(done(w, iterations))
    } else {
        Err(Error::Convergence {
            z,
            branch,
            iterations,
        })
    }
}

/// Interval halving on a bracket certified by sign, returning the last
/// midpoint, the step count and whether the residual bound was met.
fn bisect_fallback(z: f64, branch: BranchId, rel_tol: f64) -> (f64, u32, bool) {
    let f = |w: f64| w * libm::exp(w) - z;
    let (mut lo, mut hi) = match branch {
        BranchId::W0 if z < 0.0 => (-1.0, 0.0),
        BranchId::W0 => (0.0, libm::log(z).max(1.0)),
        BranchId::Wm1 => {
            let mut lo = (2.0 * libm::log(-z) - 1.0).min(-2.0);
            // f(lo) must be positive; e^lo underflowing to zero also gives that.
            while f(lo) <= 0.0 && lo > -1e300 {
                lo *= 2.0;
            }
            (lo, -1.0)
        }
    };
    let f_lo_negative = f(lo) < 0.0;

    let mut mid = 0.5 * (lo + hi);
    for step in 1..=BISECTION_MAX_STEPS {
        mid = lo + 0.5 * (hi - lo);
        let fm = f(mid);
        if libm::fabs(fm) <= accept_bound(z, mid, rel_tol) {
            return (mid, step, true);
        }
        if mid <= lo || mid >= hi {
            return (mid, step, false);
        }
        if (fm < 0.0) == f_lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (mid, BISECTION_MAX_STEPS, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_E: f64 = 1.0 / E;

    /// Reference root of `w e^w = z` by plain bisection, independent of the
    /// Halley path.
    fn bisection_root(z: f64, mut lo: f64, mut hi: f64) -> f64 {
        let f = |w: f64| w * libm::exp(w) - z;
        let f_lo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == (f_lo < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn wexp_values() {
        assert_eq!(wexp(0.0).unwrap(), 0.0);
        assert!((wexp(-1.0).unwrap() + 0.367_879).abs() < 1e-6);
        assert!((wexp(1.0).unwrap() - E).abs() < 1e-15);
        assert!(matches!(wexp(800.0), Err(Error::Overflow { .. })));
        assert!(matches!(wexp(f64::NAN), Err(Error::Domain { .. })));
    }

    #[test]
    fn offset_split_is_accurate() {
        // The nearest double to -1/e lies just below the branch point.
        assert!(branch_offset(BRANCH_POINT) < 0.0);
        assert!(branch_offset(BRANCH_POINT).abs() < 2e-17);
        assert!((branch_offset(-0.25) - (INV_E - 0.25)).abs() < 1e-16);
    }

    #[test]
    fn initial_guess_examples() {
        assert_eq!(initial_guess(0.0, BranchId::W0).unwrap(), 0.0);
        assert_eq!(initial_guess(-INV_E, BranchId::W0).unwrap(), -1.0);
        let truth = bisection_root(-0.25, -10.0, -1.0);
        let guess = initial_guess(-0.25, BranchId::Wm1).unwrap();
        assert!((guess - truth).abs() < 0.2, "{guess} vs {truth}");
        assert!(initial_guess(-0.5, BranchId::W0).is_err());
        assert!(initial_guess(0.1, BranchId::Wm1).is_err());
    }

    #[test]
    fn initial_guess_stays_on_half_line() {
        for &z in &[-0.3678, -0.36, -0.3, -0.1, -0.03, -0.019, -1e-5, -1e-200] {
            assert!(initial_guess(z, BranchId::Wm1).unwrap() <= -1.0);
            assert!(initial_guess(z, BranchId::W0).unwrap() >= -1.0);
        }
        for &z in &[0.0, 1e-3, 0.5, 2.9, 3.1, 1e6, 1e300] {
            assert!(initial_guess(z, BranchId::W0).unwrap() >= -1.0);
        }
    }

    #[test]
    fn exact_cases() {
        let cfg = EvalConfig::default();
        assert_eq!(eval_w(0.0, BranchId::W0, &cfg).unwrap().w, 0.0);
        assert!((eval_w(E, BranchId::W0, &cfg).unwrap().w - 1.0).abs() < 1e-15);
        for branch in [BranchId::W0, BranchId::Wm1] {
            let r = eval_w(-INV_E, branch, &cfg).unwrap();
            assert_eq!(r.w, -1.0);
            assert_eq!(r.iterations, 0);
        }
    }

    #[test]
    fn base_1_3_values() {
        let cfg = EvalConfig::default();
        let z = -libm::log(1.3);
        let w0 = eval_w(z, BranchId::W0, &cfg).unwrap().w;
        let wm1 = eval_w(z, BranchId::Wm1, &cfg).unwrap().w;
        assert!((w0 + 0.386).abs() < 5e-4, "{w0}");
        assert!((wm1 + 2.061).abs() < 5e-4, "{wm1}");
    }

    #[test]
    fn quarter_matches_bisection() {
        let cfg = EvalConfig::default();
        let w0 = eval_w(-0.25, BranchId::W0, &cfg).unwrap().w;
        let wm1 = eval_w(-0.25, BranchId::Wm1, &cfg).unwrap().w;
        assert!((w0 - bisection_root(-0.25, -1.0, 0.0)).abs() < 1e-12);
        assert!((wm1 - bisection_root(-0.25, -10.0, -1.0)).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let cfg = EvalConfig::default();
        assert!(matches!(
            eval_w(-0.5, BranchId::W0, &cfg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_w(-0.5, BranchId::Wm1, &cfg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_w(0.0, BranchId::Wm1, &cfg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_w(1.0, BranchId::Wm1, &cfg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_w(f64::NAN, BranchId::W0, &cfg),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            eval_w(f64::INFINITY, BranchId::W0, &cfg),
            Err(Error::Domain { .. })
        ));
        let bad = EvalConfig {
            rel_tol: 0.0,
            ..cfg
        };
        assert!(eval_w(1.0, BranchId::W0, &bad).is_err());
        let bad = EvalConfig { max_iter: 0, ..cfg };
        assert!(eval_w(1.0, BranchId::W0, &bad).is_err());
        let bad = EvalConfig {
            branch_point_window: -1.0,
            ..cfg
        };
        assert!(eval_w(1.0, BranchId::W0, &bad).is_err());
    }

    #[test]
    fn window_clamps_to_branch_point() {
        let cfg = EvalConfig::default();
        let z = -INV_E - 5e-11;
        for branch in [BranchId::W0, BranchId::Wm1] {
            let r = eval_w(z, branch, &cfg).unwrap();
            assert_eq!(r.w, -1.0);
            assert_eq!(r.z, BRANCH_POINT);
        }
        assert!(eval_w(-INV_E - 2e-10, BranchId::W0, &cfg).is_err());
        let strict = EvalConfig {
            branch_point_window: 0.0,
            ..cfg
        };
        assert!(eval_w(z, BranchId::W0, &strict).is_err());
    }

    #[test]
    fn near_branch_point_agrees_with_series() {
        let cfg = EvalConfig::default();
        for k in 7..=16 {
            let z = -INV_E + 10f64.powi(-k);
            for branch in [BranchId::W0, BranchId::Wm1] {
                let r = eval_w(z, branch, &cfg).unwrap();
                let s = branch_point_series(z, branch).unwrap();
                assert!(branch.in_range(r.w));
                assert!(
                    (r.w - s).abs() <= SERIES_ACCEPT_TOL,
                    "k={k} {branch}: {} vs {s}",
                    r.w
                );
            }
        }
    }

    #[test]
    fn tiny_and_huge_arguments() {
        let cfg = EvalConfig::default();
        let r = eval_w(1e-300, BranchId::W0, &cfg).unwrap();
        assert_eq!(r.w, 1e-300);
        let r = eval_w(-1e-300, BranchId::Wm1, &cfg).unwrap();
        assert!((r.w - bisection_root(-1e-300, -800.0, -1.0)).abs() < 1e-10);
        let r = eval_w(1e300, BranchId::W0, &cfg).unwrap();
        assert!((r.w - bisection_root(1e300, 1.0, 700.0)).abs() < 1e-10);
        let r = eval_w(f64::MAX, BranchId::W0, &cfg).unwrap();
        assert!(r.w > 700.0 && r.w < 710.0);
    }

    #[test]
    fn too_few_iterations_is_still_rescued_by_bisection() {
        let cfg = EvalConfig {
            max_iter: 1,
            ..EvalConfig::default()
        };
        let r = eval_w(-0.25, BranchId::Wm1, &cfg).unwrap();
        assert!((r.w - bisection_root(-0.25, -10.0, -1.0)).abs() < 1e-12);
    }
}

//! Brute-force reference root finding.
//!
//! Everything here is built from exponentials, logarithms and interval
//! halving. Nothing in this crate evaluates the Lambert W function, so its
//! answers can be compared against the closed-form path without sharing any
//! of its failure modes.
//!
//! ```
//! use lambertw_oracle::{bisect, scan_sign_changes, ScalarFn};
//!
//! let f = ScalarFn::WResidual { z: -0.25 };
//! let scan = scan_sign_changes(f, -10.0, 2.0, 10_000).unwrap();
//! assert_eq!(scan.brackets.len(), 2);
//! let root = bisect(f, scan.brackets[1], 1e-12).unwrap();
//! assert!((root * root.exp() + 0.25).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;

use alloc::vec::Vec;
use core::fmt;

/// Lower end of the scan window for `b^x - log_b x`; the logarithm is
/// finite for every positive node so the floor is the only constraint.
pub const FULL_GAP_X_MIN: f64 = 1e-9;

/// Default node count for intersection scans.
pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleError {
    /// Interval, node count, tolerance or base outside what the routine accepts.
    Domain(&'static str),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl core::error::Error for OracleError {}

pub type Result<T> = core::result::Result<T, OracleError>;

/// The scalar functions whose zeros the oracle looks for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    /// `f(w) = w e^w - z`
    WResidual { z: f64 },
    /// `g(x) = b^x - x`
    DiagonalGap { b: f64 },
    /// `h(x) = b^x - log_b x`, for `x > 0`
    FullGap { b: f64 },
}

impl ScalarFn {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ScalarFn::WResidual { z } => x * libm::exp(x) - z,
            ScalarFn::DiagonalGap { b } => libm::pow(b, x) - x,
            ScalarFn::FullGap { b } => libm::pow(b, x) - libm::log(x) / libm::log(b),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            ScalarFn::WResidual { z } if !z.is_finite() => {
                Err(OracleError::Domain("z must be finite"))
            }
            ScalarFn::DiagonalGap { b } | ScalarFn::FullGap { b } => check_base(b),
            _ => Ok(()),
        }
    }
}

fn check_base(b: f64) -> Result<()> {
    if !(b.is_finite() && b > 0.0) || b == 1.0 {
        return Err(OracleError::Domain(
            "base must be positive, finite and not 1",
        ));
    }
    Ok(())
}

/// An interval certified to hold a zero: the endpoint values have strictly
/// opposite signs, or one of them is exactly zero. Degenerate brackets
/// (`lo == hi`) mark a node that evaluated to exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    pub fn new(f: ScalarFn, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f.eval(lo), f.eval(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let bracket = RootBracket { lo, hi, f_lo, f_hi };
        if bracket.is_valid() {
            Ok(bracket)
        } else {
            Err(OracleError::Domain(
                "bracket does not certify a sign change",
            ))
        }
    }

    pub fn is_valid(&self) -> bool {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return false;
        }
        if self.f_lo == 0.0 || self.f_hi == 0.0 {
            return true;
        }
        self.lo < self.hi && opposite_signs(self.f_lo, self.f_hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn opposite_signs(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanResult {
    pub brackets: Vec<RootBracket>,
    /// Panels dropped because an endpoint evaluated to NaN or infinity.
    pub skipped_panels: usize,
}

fn node(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / n as f64)
    }
}

fn check_interval(lo: f64, hi: f64, n: usize) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(OracleError::Domain("scan interval must satisfy lo < hi"));
    }
    if n < 2 {
        return Err(OracleError::Domain("scan needs at least two panels"));
    }
    Ok(())
}

/// Evaluates `f` at `n + 1` uniform nodes on `[lo, hi]` and returns one
/// bracket per adjacent pair with a strict sign change, in ascending order.
/// A node that evaluates to exactly zero yields the degenerate bracket
/// `[x, x]`; panels touching it are not reported a second time.
pub fn scan_sign_changes(f: ScalarFn, lo: f64, hi: f64, n: usize) -> Result<ScanResult> {
    f.check()?;
    check_interval(lo, hi, n)?;
    if matches!(f, ScalarFn::FullGap { .. }) && lo <= 0.0 {
        return Err(OracleError::Domain("log_b x needs lo > 0"));
    }

    let mut out = ScanResult::default();
    let mut x_prev = lo;
    let mut f_prev = f.eval(lo);
    if f_prev == 0.0 {
        out.brackets.push(RootBracket {
            lo,
            hi: lo,
            f_lo: 0.0,
            f_hi: 0.0,
        });
    }
    for i in 1..=n {
        let x = node(lo, hi, i, n);
        let fx = f.eval(x);
        if !(f_prev.is_finite() && fx.is_finite()) {
            out.skipped_panels += 1;
        } else if fx == 0.0 {
            out.brackets.push(RootBracket {
                lo: x,
                hi: x,
                f_lo: 0.0,
                f_hi: 0.0,
            });
        } else if opposite_signs(f_prev, fx) {
            out.brackets.push(RootBracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(out)
}

/// Smallest `|f|` over the `n + 1` uniform nodes of `[lo, hi]`, with its
/// node. Used where a root is a touching zero that no sign change reveals.
pub fn min_abs_on_grid(f: ScalarFn, lo: f64, hi: f64, n: usize) -> Result<(f64, f64)> {
    f.check()?;
    check_interval(lo, hi, n)?;
    let mut best = (lo, f64::INFINITY);
    for i in 0..=n {
        let x = node(lo, hi, i, n);
        let v = libm::fabs(f.eval(x));
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// Pure interval halving on a certified bracket until its width drops below
/// `abs_tol` or the midpoint can no longer split it. Returns the point of
/// smallest `|f|` seen among the final endpoints, the final midpoint and the
/// original endpoints, so the result never does worse than the bracket it
/// came from.
pub fn bisect(f: ScalarFn, bracket: RootBracket, abs_tol: f64) -> Result<f64> {
    f.check()?;
    if abs_tol.is_nan() || abs_tol <= 0.0 {
        return Err(OracleError::Domain("abs_tol must be positive"));
    }
    if !bracket.is_valid() {
        return Err(OracleError::Domain(
            "bracket does not certify a sign change",
        ));
    }
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }

    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut f_lo, mut f_hi) = (bracket.f_lo, bracket.f_hi);
    while hi - lo >= abs_tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f.eval(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if opposite_signs(f_lo, f_mid) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }

    let mid = lo + 0.5 * (hi - lo);
    let candidates = [
        (mid, f.eval(mid)),
        (lo, f_lo),
        (hi, f_hi),
        (bracket.lo, bracket.f_lo),
        (bracket.hi, bracket.f_hi),
    ];
    let mut best = candidates[0];
    for c in &candidates[1..] {
        if libm::fabs(c.1) < libm::fabs(best.1) {
            best = *c;
        }
    }
    Ok(best.0)
}

/// Roots of `b^x = log_b x` on `[FULL_GAP_X_MIN, x_max]`, found by scanning
/// `n` panels and bisecting each sign change to `abs_tol`. Roots closer than
/// `10 * abs_tol` are merged. The result is ascending.
pub fn all_intersections_numeric(b: f64, x_max: f64, n: usize, abs_tol: f64) -> Result<Vec<f64>> {
    check_base(b)?;
    if !x_max.is_finite() || x_max <= FULL_GAP_X_MIN {
        return Err(OracleError::Domain("x_max must exceed the scan floor"));
    }
    if abs_tol.is_nan() || abs_tol <= 0.0 {
        return Err(OracleError::Domain("abs_tol must be positive"));
    }
    let f = ScalarFn::FullGap { b };
    let scan = scan_sign_changes(f, FULL_GAP_X_MIN, x_max, n)?;
    let mut roots: Vec<f64> = Vec::with_capacity(scan.brackets.len());
    for bracket in scan.brackets {
        let r = bisect(f, bracket, abs_tol)?;
        match roots.last() {
            Some(&prev) if r - prev < 10.0 * abs_tol => {}
            _ => roots.push(r),
        }
    }
    Ok(roots)
}

//! Where does `y = b^x` meet its inverse `y = log_b x`?
//!
//! The two graphs are mirror images in the bisectrix `y = x`, so this module
//! looks for diagonal solutions `b^x = x`. Substituting `w = -x ln b` turns
//! that into `w e^w = -ln b`, and the regime is decided by where
//! `z = -ln b` falls relative to the branch point `-1/e`:
//!
//! | base                | `z`              | points                     |
//! |---------------------|------------------|----------------------------|
//! | `0 < b < 1`         | `z > 0`          | one, from `W0`             |
//! | `1 < b < e^(1/e)`   | `-1/e < z < 0`   | two, from `W0` and `W-1`   |
//! | `b = e^(1/e)`       | `z = -1/e`       | tangency at `x = e`        |
//! | `b > e^(1/e)`       | `z < -1/e`       | none                       |
//!
//! Off-diagonal intersections are not searched for here; see
//! [`crate::compare`].

use alloc::vec::Vec;
use core::f64::consts::E;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::lambert::{eval_w, BranchId, EvalConfig};

/// `e^(1/e)`, the base at which the exponential touches the bisectrix.
pub const TANGENT_BASE: f64 = 1.444_667_861_009_766;

/// Relative tolerance for the `b = 1` exclusion and the tangency snap.
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

/// A logarithm base: finite, positive and not exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Base(f64);

impl Base {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() || b <= 0.0 {
            return domain("base must be positive and finite", b);
        }
        if b == 1.0 {
            return domain("base 1 has no logarithm", b);
        }
        Ok(Base(b))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Base {
    type Error = Error;

    fn try_from(b: f64) -> Result<Self> {
        Base::new(b)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `z = -ln b`: positive below 1, negative above.
pub fn base_to_z(b: Base) -> f64 {
    -libm::log(b.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntersectionClass {
    /// `0 < b < 1`
    UniqueDiagonal,
    /// `1 < b < e^(1/e)`
    TwoPoints,
    /// `b = e^(1/e)` within tolerance
    Tangent,
    /// `b > e^(1/e)`
    NoIntersection,
}

impl IntersectionClass {
    pub fn point_count(self) -> usize {
        match self {
            IntersectionClass::UniqueDiagonal | IntersectionClass::Tangent => 1,
            IntersectionClass::TwoPoints => 2,
            IntersectionClass::NoIntersection => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntersectionClass::UniqueDiagonal => "UniqueDiagonal",
            IntersectionClass::TwoPoints => "TwoPoints",
            IntersectionClass::Tangent => "Tangent",
            IntersectionClass::NoIntersection => "NoIntersection",
        }
    }
}

impl fmt::Display for IntersectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sorts `b` into its regime. Both the distance from 1 and the distance from
/// `e^(1/e)` are measured relative to `b`.
pub fn classify_base(b: Base, class_tol: f64) -> Result<IntersectionClass> {
    if !(class_tol >= 0.0 && class_tol.is_finite()) {
        return domain("class_tol must be non-negative", class_tol);
    }
    let b = b.0;
    let slack = class_tol * b;
    if libm::fabs(b - 1.0) <= slack {
        return domain("base is within class_tol of 1", b);
    }
    Ok(if b < 1.0 {
        IntersectionClass::UniqueDiagonal
    } else if libm::fabs(b - TANGENT_BASE) <= slack {
        IntersectionClass::Tangent
    } else if b < TANGENT_BASE {
        IntersectionClass::TwoPoints
    } else {
        IntersectionClass::NoIntersection
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointSource {
    Branch(BranchId),
    Tangency,
}

impl PointSource {
    pub fn name(self) -> &'static str {
        match self {
            PointSource::Branch(b) => b.name(),
            PointSource::Tangency => "Tangency",
        }
    }
}

/// A solution of `b^x = x`; `y` always equals `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionPoint {
    pub x: f64,
    pub y: f64,
    pub source: PointSource,
    /// `|b^x - x|`
    pub residual: f64,
}

impl IntersectionPoint {
    fn new(b: f64, x: f64, source: PointSource) -> Self {
        IntersectionPoint {
            x,
            y: x,
            source,
            residual: libm::fabs(libm::pow(b, x) - x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub base: Base,
    /// `-ln b`
    pub z: f64,
    pub class: IntersectionClass,
    /// Ascending in `x`.
    pub points: Vec<IntersectionPoint>,
}

/// Diagonal intersections of `b^x` and `log_b x` with the default
/// classification tolerance.
pub fn diagonal_intersections(b: Base, config: &EvalConfig) -> Result<IntersectionReport> {
    diagonal_intersections_with_tol(b, config, DEFAULT_CLASS_TOL)
}

pub fn diagonal_intersections_with_tol(
    b: Base,
    config: &EvalConfig,
    class_tol: f64,
) -> Result<IntersectionReport> {
    let class = classify_base(b, class_tol)?;
    let z = base_to_z(b);
    let on_branch = |branch: BranchId| -> Result<IntersectionPoint> {
        let w = eval_w(z, branch, config)?.w;
        Ok(IntersectionPoint::new(
            b.0,
            w / z,
            PointSource::Branch(branch),
        ))
    };

    let mut points = Vec::with_capacity(class.point_count());
    match class {
        IntersectionClass::UniqueDiagonal => points.push(on_branch(BranchId::W0)?),
        IntersectionClass::TwoPoints => {
            points.push(on_branch(BranchId::W0)?);
            points.push(on_branch(BranchId::Wm1)?);
            points.sort_by(|p, q| p.x.total_cmp(&q.x));
        }
        IntersectionClass::Tangent => {
            points.push(IntersectionPoint::new(b.0, E, PointSource::Tangency));
        }
        IntersectionClass::NoIntersection => {}
    }
    Ok(IntersectionReport {
        base: b,
        z,
        class,
        points,
    })
}

/// Slope `(ln b) b^e` of `y = b^x` at `x = e`, without checking the regime.
pub fn tangency_slope(b: Base) -> f64 {
    libm::log(b.0) * libm::pow(b.0, E)
}

/// Slope of `y = b^x` at the tangency point `x = e`. Touching the bisectrix
/// means this equals 1. Only defined in the tangent regime.
pub fn tangency_certificate(b: Base) -> Result<f64> {
    match classify_base(b, DEFAULT_CLASS_TOL)? {
        IntersectionClass::Tangent => Ok(tangency_slope(b)),
        _ => Err(Error::State {
            reason: "base is not in the tangent regime",
            value: b.0,
        }),
    }
}

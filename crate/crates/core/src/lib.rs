//! Real branches of the Lambert W function and the intersection problem for
//! `y = b^x` and its inverse `y = log_b x`.
//!
//! [`lambert`] evaluates `W0` and `W-1` to near machine precision.
//! [`intersect`] classifies a base `b` into one of four regimes and solves for
//! the points where the exponential meets the bisectrix `y = x`.
//! [`compare`] checks those closed-form points against the brute-force
//! scanner in [`oracle`], which shares no code with the W evaluator.
//!
//! ```
//! use lambertw_core::{diagonal_intersections, Base, EvalConfig, IntersectionClass};
//!
//! let report = diagonal_intersections(Base::new(1.3).unwrap(), &EvalConfig::default()).unwrap();
//! assert_eq!(report.class, IntersectionClass::TwoPoints);
//! assert!((report.points[0].x - 1.47).abs() < 5e-3);
//! assert!((report.points[1].x - 7.86).abs() < 5e-3);
//! ```
#![no_std]

extern crate alloc;

pub mod compare;
pub mod error;
pub mod intersect;
pub mod lambert;

pub use lambertw_oracle as oracle;

pub use compare::{compare_with_closed_form, ComparisonVerdict, MatchedPair};
pub use error::{Error, Result};
pub use intersect::{
    base_to_z, classify_base, diagonal_intersections, diagonal_intersections_with_tol,
    tangency_certificate, tangency_slope, Base, IntersectionClass, IntersectionPoint,
    IntersectionReport, PointSource,
};
pub use lambert::{eval_w, initial_guess, wexp, BranchId, EvalConfig, EvalResult};

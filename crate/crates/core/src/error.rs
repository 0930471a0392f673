use core::fmt;

use crate::lambert::BranchId;
use lambertw_oracle::OracleError;

/// Failures raised by this crate.
///
/// `Domain` and `State` are caller errors. `Convergence` means the evaluator
/// itself misbehaved and should be reported as a bug.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    Domain {
        reason: &'static str,
        value: f64,
    },
    Convergence {
        z: f64,
        branch: BranchId,
        iterations: u32,
    },
    Overflow {
        w: f64,
    },
    State {
        reason: &'static str,
        value: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { reason, value } => write!(f, "domain error: {reason} (got {value})"),
            Error::Convergence {
                z,
                branch,
                iterations,
            } => write!(
                f,
                "{branch} failed to converge at z = {z} after {iterations} iterations"
            ),
            Error::Overflow { w } => write!(f, "w*e^w overflows at w = {w}"),
            Error::State { reason, value } => write!(f, "invalid state: {reason} (got {value})"),
        }
    }
}

impl core::error::Error for Error {}

impl From<OracleError> for Error {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Domain(reason) => Error::Domain {
                reason,
                value: f64::NAN,
            },
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain<T>(reason: &'static str, value: f64) -> Result<T> {
    Err(Error::Domain { reason, value })
}

//! Command-line front end for `lambertw-core`.
//!
//! Subcommands: `eval`, `intersect`, `oracle` and `plot`. Exit codes are
//! 0 on success, 2 for domain errors, 3 for convergence failures and 64 for
//! usage errors.

pub mod app;
pub mod output;
pub mod plot;

pub use app::{exit, run, Cli, Command};
pub use output::OutputFormat;
pub use plot::{figure_samples, CurveSample, Figure};

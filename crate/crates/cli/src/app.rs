use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ColorChoice, Parser, Subcommand};
use lambertw_core::compare::{compare_with_closed_form, DEFAULT_SAMPLES};
use lambertw_core::{diagonal_intersections_with_tol, eval_w, Base, BranchId, Error, EvalConfig};

use crate::output::{self, OutputFormat};
use crate::plot::{figure_samples, write_samples, Figure, PlotError, DEFAULT_PLOT_SAMPLES};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const DOMAIN: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const USAGE: i32 = 64;
}

#[derive(Debug, Parser)]
#[command(
    name = "lambertw",
    version,
    color = ColorChoice::Never,
    about = "Real Lambert W branches and the intersections of b^x with log_b x",
    after_help = "Exit codes: 0 success, 2 domain error, 3 convergence failure, 64 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_branch(s: &str) -> Result<BranchId, String> {
    s.trim()
        .parse::<i32>()
        .ok()
        .and_then(BranchId::from_index)
        .ok_or_else(|| format!("branch must be 0 or -1, got '{s}'"))
}

fn parse_figure(s: &str) -> Result<String, String> {
    match s {
        "fig1" | "fig2" | "fig3" | "fig4" | "fig5" | "custom" => Ok(s.to_string()),
        _ => Err(format!("unknown figure '{s}' (fig1..fig5 or custom)")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate W on one real branch.
    #[command(allow_negative_numbers = true)]
    Eval {
        /// Argument of W.
        #[arg(long)]
        z: f64,
        /// Branch index: 0 (principal) or -1.
        #[arg(long, value_parser = parse_branch, allow_hyphen_values = true)]
        branch: BranchId,
        /// Residual bound relative to max(1, |z|).
        #[arg(long, default_value = "1e-14")]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        max_iter: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Classify a base and list where b^x meets log_b x on the bisectrix.
    #[command(allow_negative_numbers = true)]
    Intersect {
        /// Base b > 0, b != 1.
        #[arg(long)]
        base: f64,
        /// Relative tolerance for b = 1 and b = e^(1/e).
        #[arg(long, default_value = "1e-9")]
        class_tol: f64,
        #[arg(long, default_value = "1e-14")]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Compare the closed-form points against a brute-force scan of b^x - log_b x.
    #[command(allow_negative_numbers = true)]
    Oracle {
        /// Base b > 0, b != 1.
        #[arg(long)]
        base: f64,
        /// Right end of the scan; default max(50, 4 * largest closed-form root).
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = clap::value_parser!(usize))]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Write curve data for a figure as CSV (x,y,series_label).
    #[command(allow_negative_numbers = true)]
    Plot {
        /// fig1 (b = e), fig2 (w e^w), fig3 (b = 0.8), fig4 (b = 1.3), fig5 (b = e^(1/e)) or custom.
        #[arg(long, value_parser = parse_figure)]
        figure: String,
        #[arg(long, default_value_t = DEFAULT_PLOT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        /// Base for the custom figure.
        #[arg(long, required_if_eq("figure", "custom"))]
        base: Option<f64>,
        #[arg(long, default_value_t = -2.0)]
        x_min: f64,
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Plot(PlotError),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::Convergence { .. }) => exit::CONVERGENCE,
            Failure::Plot(PlotError::Core(Error::Convergence { .. })) => exit::CONVERGENCE,
            _ => exit::DOMAIN,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Plot(e) => e.fmt(f),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    exit::SUCCESS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    exit::USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => exit::SUCCESS,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn execute<O: Write>(command: Command, out: &mut O) -> Result<(), Failure> {
    match command {
        Command::Eval {
            z,
            branch,
            tol,
            max_iter,
            format,
        } => {
            let config = EvalConfig {
                rel_tol: tol,
                max_iter,
                ..EvalConfig::default()
            };
            let r = eval_w(z, branch, &config)?;
            output::write_eval(out, format, &config, &r)?;
        }
        Command::Intersect {
            base,
            class_tol,
            tol,
            format,
        } => {
            let config = EvalConfig {
                rel_tol: tol,
                ..EvalConfig::default()
            };
            let report = diagonal_intersections_with_tol(Base::new(base)?, &config, class_tol)?;
            output::write_intersect(out, format, &config, class_tol, &report)?;
        }
        Command::Oracle {
            base,
            x_max,
            samples,
            format,
        } => {
            let verdict = compare_with_closed_form(Base::new(base)?, x_max, samples)?;
            output::write_oracle(out, format, &verdict)?;
        }
        Command::Plot {
            figure,
            samples,
            out: path,
            base,
            x_min,
            x_max,
        } => {
            let figure = match Figure::parse(&figure) {
                Some(f) => f,
                None => Figure::Custom {
                    base: base.unwrap_or(f64::NAN),
                    x_min,
                    x_max,
                },
            };
            let data = figure_samples(figure, samples).map_err(Failure::Plot)?;
            let file = File::create(&path).map_err(|e| {
                Failure::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", path.display()),
                ))
            })?;
            let mut writer = BufWriter::new(file);
            write_samples(&mut writer, &data)?;
            writer.flush()?;
            writeln!(out, "wrote {} rows to {}", data.len(), path.display())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lambertw").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn branch_flag_spelling() {
        assert_eq!(parse_branch("0"), Ok(BranchId::W0));
        assert_eq!(parse_branch("-1"), Ok(BranchId::Wm1));
        assert!(parse_branch("1").is_err());
        assert!(parse_branch("W0").is_err());
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_args(&[]).0, exit::USAGE);
        assert_eq!(run_args(&["eval", "--z", "0"]).0, exit::USAGE);
        assert_eq!(
            run_args(&["eval", "--z", "0", "--branch", "2"]).0,
            exit::USAGE
        );
        assert_eq!(
            run_args(&["eval", "--z", "abc", "--branch", "0"]).0,
            exit::USAGE
        );
        assert_eq!(
            run_args(&["plot", "--figure", "fig9", "--out", "x.csv"]).0,
            exit::USAGE
        );
        assert_eq!(
            run_args(&["plot", "--figure", "custom", "--out", "x.csv"]).0,
            exit::USAGE
        );
    }

    #[test]
    fn help_exits_zero_and_lists_defaults() {
        let (code, out, _) = run_args(&["eval", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("1e-14"));
        assert!(out.contains("50"));
        let (code, out, _) = run_args(&["oracle", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("20000"));
        let (code, out, _) = run_args(&["plot", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("400"));
    }

    #[test]
    fn domain_errors_exit_2() {
        let (code, out, err) = run_args(&["eval", "--z", "-0.5", "--branch", "0"]);
        assert_eq!(code, exit::DOMAIN);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1);
        assert_eq!(run_args(&["intersect", "--base", "0"]).0, exit::DOMAIN);
        assert_eq!(
            run_args(&["intersect", "--base", "1.0000000000001"]).0,
            exit::DOMAIN
        );
        assert_eq!(run_args(&["oracle", "--base", "-2"]).0, exit::DOMAIN);
    }

    #[test]
    fn class_tol_default_matches_library() {
        let cli = Cli::try_parse_from(["lambertw", "intersect", "--base", "2"]).unwrap();
        match cli.command {
            Command::Intersect { class_tol, tol, .. } => {
                assert_eq!(class_tol, lambertw_core::intersect::DEFAULT_CLASS_TOL);
                assert_eq!(tol, EvalConfig::default().rel_tol);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn eval_plain() {
        let (code, out, _) = run_args(&["eval", "--z", "0", "--branch", "0"]);
        assert_eq!(code, 0);
        assert!(out
            .lines()
            .any(|l| l.starts_with("w ") && l.ends_with(" 0.0")));
    }
}

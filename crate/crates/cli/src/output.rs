//! Rendering of results as JSON, CSV or aligned plain text.
//!
//! Numbers are written in Rust's shortest round-trip form, which never
//! depends on locale. JSON output is one top-level object per invocation.

use std::io::{self, Write};

use clap::ValueEnum;
use lambertw_core::compare::ORACLE_ABS_TOL;
use lambertw_core::{ComparisonVerdict, EvalConfig, EvalResult, IntersectionReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

/// Shortest representation that parses back to the same double.
pub fn fmt_num(x: f64) -> String {
    format!("{x:?}")
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

#[derive(Debug, Serialize)]
pub struct EvalConfigView {
    pub rel_tol: f64,
    pub max_iter: u32,
    pub branch_point_window: f64,
}

impl From<&EvalConfig> for EvalConfigView {
    fn from(c: &EvalConfig) -> Self {
        EvalConfigView {
            rel_tol: c.rel_tol,
            max_iter: c.max_iter,
            branch_point_window: c.branch_point_window,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalResultView {
    pub z: f64,
    pub branch: &'static str,
    pub branch_index: i32,
    pub w: f64,
    pub residual: f64,
    pub iterations: u32,
}

impl From<&EvalResult> for EvalResultView {
    fn from(r: &EvalResult) -> Self {
        EvalResultView {
            z: r.z,
            branch: r.branch.name(),
            branch_index: r.branch.index(),
            w: r.w,
            residual: r.residual,
            iterations: r.iterations,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub command: &'static str,
    pub config: EvalConfigView,
    pub result: EvalResultView,
}

pub fn write_eval<W: Write>(
    out: &mut W,
    format: OutputFormat,
    config: &EvalConfig,
    r: &EvalResult,
) -> io::Result<()> {
    let view = EvalResultView::from(r);
    match format {
        OutputFormat::Json => {
            let doc = EvalOutput {
                command: "eval",
                config: config.into(),
                result: view,
            };
            writeln!(out, "{}", serde_json::to_string(&doc)?)
        }
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["z", "branch", "w", "residual", "iterations"])?;
            w.write_record([
                fmt_num(view.z),
                view.branch.to_string(),
                fmt_num(view.w),
                fmt_num(view.residual),
                view.iterations.to_string(),
            ])?;
            w.flush()
        }
        OutputFormat::Plain => {
            let rows = [
                ("z", fmt_num(view.z)),
                ("branch", view.branch.to_string()),
                ("w", fmt_num(view.w)),
                ("residual", fmt_num(view.residual)),
                ("iterations", view.iterations.to_string()),
            ];
            write_plain(out, &rows)
        }
    }
}

fn write_plain<W: Write>(out: &mut W, rows: &[(&str, String)]) -> io::Result<()> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct IntersectConfigView {
    #[serde(flatten)]
    pub eval: EvalConfigView,
    pub class_tol: f64,
}

#[derive(Debug, Serialize)]
pub struct PointView {
    pub x: f64,
    pub y: f64,
    pub source: &'static str,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportView {
    pub b: f64,
    pub z: f64,
    pub class: &'static str,
    pub points: Vec<PointView>,
}

impl From<&IntersectionReport> for ReportView {
    fn from(r: &IntersectionReport) -> Self {
        ReportView {
            b: r.base.get(),
            z: r.z,
            class: r.class.name(),
            points: r
                .points
                .iter()
                .map(|p| PointView {
                    x: p.x,
                    y: p.y,
                    source: p.source.name(),
                    residual: p.residual,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct IntersectOutput {
    pub command: &'static str,
    pub config: IntersectConfigView,
    pub report: ReportView,
}

pub fn write_intersect<W: Write>(
    out: &mut W,
    format: OutputFormat,
    config: &EvalConfig,
    class_tol: f64,
    report: &IntersectionReport,
) -> io::Result<()> {
    let view = ReportView::from(report);
    match format {
        OutputFormat::Json => {
            let doc = IntersectOutput {
                command: "intersect",
                config: IntersectConfigView {
                    eval: config.into(),
                    class_tol,
                },
                report: view,
            };
            writeln!(out, "{}", serde_json::to_string(&doc)?)
        }
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["b", "z", "class", "source", "x", "y", "residual"])?;
            let head = [fmt_num(view.b), fmt_num(view.z), view.class.to_string()];
            if view.points.is_empty() {
                w.write_record(
                    head.iter()
                        .cloned()
                        .chain(["", "", "", ""].map(String::from)),
                )?;
            }
            for p in &view.points {
                let tail = [
                    p.source.to_string(),
                    fmt_num(p.x),
                    fmt_num(p.y),
                    fmt_num(p.residual),
                ];
                w.write_record(head.iter().cloned().chain(tail))?;
            }
            w.flush()
        }
        OutputFormat::Plain => {
            let mut rows = vec![
                ("b", fmt_num(view.b)),
                ("z", fmt_num(view.z)),
                ("class", view.class.to_string()),
                ("points", view.points.len().to_string()),
            ];
            for p in &view.points {
                rows.push((
                    p.source,
                    format!("x = {}  residual = {}", fmt_num(p.x), fmt_num(p.residual)),
                ));
            }
            write_plain(out, &rows)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleConfigView {
    pub x_max: f64,
    pub samples: usize,
    pub abs_tol: f64,
}

#[derive(Debug, Serialize)]
pub struct PairView {
    pub closed_form: f64,
    pub oracle: f64,
    pub delta: f64,
}

#[derive(Debug, Serialize)]
pub struct VerdictView {
    pub b: f64,
    pub class: &'static str,
    pub oracle_roots: Vec<f64>,
    pub closed_form: Vec<f64>,
    pub pairs: Vec<PairView>,
    pub unmatched_oracle: Vec<f64>,
    pub unmatched_closed_form: Vec<f64>,
    pub max_delta: Option<f64>,
    pub count_mismatch: bool,
}

impl From<&ComparisonVerdict> for VerdictView {
    fn from(v: &ComparisonVerdict) -> Self {
        VerdictView {
            b: v.base.get(),
            class: v.class.name(),
            oracle_roots: v.oracle_roots.clone(),
            closed_form: v.closed_form.clone(),
            pairs: v
                .pairs
                .iter()
                .map(|p| PairView {
                    closed_form: p.closed_form,
                    oracle: p.oracle,
                    delta: p.delta,
                })
                .collect(),
            unmatched_oracle: v.unmatched_oracle.clone(),
            unmatched_closed_form: v.unmatched_closed_form.clone(),
            max_delta: v.max_delta(),
            count_mismatch: v.count_mismatch,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleOutput {
    pub command: &'static str,
    pub config: OracleConfigView,
    pub verdict: VerdictView,
}

pub fn write_oracle<W: Write>(
    out: &mut W,
    format: OutputFormat,
    v: &ComparisonVerdict,
) -> io::Result<()> {
    let view = VerdictView::from(v);
    match format {
        OutputFormat::Json => {
            let doc = OracleOutput {
                command: "oracle",
                config: OracleConfigView {
                    x_max: v.x_max,
                    samples: v.samples,
                    abs_tol: ORACLE_ABS_TOL,
                },
                verdict: view,
            };
            writeln!(out, "{}", serde_json::to_string(&doc)?)
        }
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "b",
                "class",
                "kind",
                "closed_form",
                "oracle",
                "delta",
                "count_mismatch",
            ])?;
            let b = fmt_num(view.b);
            let mismatch = view.count_mismatch.to_string();
            let mut row = |kind: &str, c: String, o: String, d: String| {
                w.write_record([
                    b.clone(),
                    view.class.to_string(),
                    kind.to_string(),
                    c,
                    o,
                    d,
                    mismatch.clone(),
                ])
            };
            for p in &view.pairs {
                row(
                    "pair",
                    fmt_num(p.closed_form),
                    fmt_num(p.oracle),
                    fmt_num(p.delta),
                )?;
            }
            for &x in &view.unmatched_closed_form {
                row("closed_form_only", fmt_num(x), String::new(), String::new())?;
            }
            for &x in &view.unmatched_oracle {
                row("oracle_only", String::new(), fmt_num(x), String::new())?;
            }
            if view.pairs.is_empty()
                && view.unmatched_closed_form.is_empty()
                && view.unmatched_oracle.is_empty()
            {
                row("none", String::new(), String::new(), String::new())?;
            }
            w.flush()
        }
        OutputFormat::Plain => {
            let list = |xs: &[f64]| {
                xs.iter()
                    .map(|&x| fmt_num(x))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let mut rows = vec![
                ("b", fmt_num(view.b)),
                ("class", view.class.to_string()),
                ("x_max", fmt_num(v.x_max)),
                ("samples", v.samples.to_string()),
                ("oracle", format!("[{}]", list(&view.oracle_roots))),
                ("closed_form", format!("[{}]", list(&view.closed_form))),
            ];
            for p in &view.pairs {
                rows.push((
                    "pair",
                    format!(
                        "{} ~ {}  delta = {}",
                        fmt_num(p.closed_form),
                        fmt_num(p.oracle),
                        fmt_num(p.delta)
                    ),
                ));
            }
            rows.push((
                "max_delta",
                view.max_delta.map_or_else(|| "-".to_string(), fmt_num),
            ));
            rows.push(("mismatch", view.count_mismatch.to_string()));
            write_plain(out, &rows)
        }
    }
}

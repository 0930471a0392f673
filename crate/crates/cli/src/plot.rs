//! Curve data for the exponential/logarithm figures and for `w e^w`.
//!
//! Output is a CSV with header `x,y,series_label`. Within a series the
//! samples are finite and strictly increasing in `x`.

use std::f64::consts::E;
use std::io::{self, Write};

use lambertw_core::intersect::TANGENT_BASE;
use lambertw_core::{diagonal_intersections, Base, EvalConfig};

use crate::output::{csv_writer, fmt_num};

pub const DEFAULT_PLOT_SAMPLES: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub x: f64,
    pub y: f64,
    pub series_label: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Figure {
    /// `b = e`: the curves never meet.
    Fig1,
    /// `z = w e^w` with its minimum marked.
    Fig2,
    /// `b = 0.8`: one crossing on the bisectrix.
    Fig3,
    /// `b = 1.3`: two crossings.
    Fig4,
    /// `b = e^(1/e)`: tangency at `(e, e)`.
    Fig5,
    Custom {
        base: f64,
        x_min: f64,
        x_max: f64,
    },
}

/// Plot windows for one exponential/logarithm figure.
struct Layout {
    base: f64,
    exp_range: (f64, f64),
    log_range: (f64, f64),
    bisectrix: (f64, f64),
}

impl Figure {
    pub fn parse(name: &str) -> Option<Figure> {
        match name {
            "fig1" => Some(Figure::Fig1),
            "fig2" => Some(Figure::Fig2),
            "fig3" => Some(Figure::Fig3),
            "fig4" => Some(Figure::Fig4),
            "fig5" => Some(Figure::Fig5),
            _ => None,
        }
    }

    fn layout(self) -> Option<Layout> {
        let l = |base, exp_range, log_range, bisectrix| {
            Some(Layout {
                base,
                exp_range,
                log_range,
                bisectrix,
            })
        };
        match self {
            Figure::Fig1 => l(E, (-6.0, 1.5), (0.05, 8.0), (-3.0, 4.0)),
            Figure::Fig2 => None,
            Figure::Fig3 => l(0.8, (-2.0, 6.2), (0.2, 7.0), (-2.0, 4.0)),
            Figure::Fig4 => l(1.3, (-3.0, 14.0), (0.6, 11.0), (-2.0, 12.0)),
            Figure::Fig5 => l(TANGENT_BASE, (-6.0, 6.0), (0.5, 5.0), (-2.0, 5.0)),
            Figure::Custom { base, x_min, x_max } => {
                let log_lo = if x_min > 0.0 { x_min } else { x_max * 1e-3 };
                l(base, (x_min, x_max), (log_lo, x_max), (x_min, x_max))
            }
        }
    }
}

#[derive(Debug)]
pub enum PlotError {
    Core(lambertw_core::Error),
    Range(&'static str),
}

impl std::fmt::Display for PlotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlotError::Core(e) => e.fmt(f),
            PlotError::Range(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for PlotError {}

impl From<lambertw_core::Error> for PlotError {
    fn from(e: lambertw_core::Error) -> Self {
        PlotError::Core(e)
    }
}

fn sample_series(
    label: &str,
    (lo, hi): (f64, f64),
    n: usize,
    f: impl Fn(f64) -> f64,
    out: &mut Vec<CurveSample>,
) {
    let mut last = f64::NEG_INFINITY;
    for i in 0..n {
        let x = if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        };
        let y = f(x);
        if x > last && x.is_finite() && y.is_finite() {
            out.push(CurveSample {
                x,
                y,
                series_label: label.to_string(),
            });
            last = x;
        }
    }
}

/// All series for `figure`, `samples` nodes per curve.
pub fn figure_samples(figure: Figure, samples: usize) -> Result<Vec<CurveSample>, PlotError> {
    if samples < 2 {
        return Err(PlotError::Range("need at least two samples per curve"));
    }
    let mut out = Vec::new();
    let Some(layout) = figure.layout() else {
        let inv_e = 1.0 / E;
        sample_series("curve", (-6.0, 1.5), samples, |w| w * w.exp(), &mut out);
        sample_series("level_2.5", (-3.0, 3.0), 2, |_| 2.5, &mut out);
        sample_series("level_-0.25", (-6.4, 6.4), 2, |_| -0.25, &mut out);
        sample_series("tangent", (-3.0, 3.0), 2, |_| -inv_e, &mut out);
        out.push(CurveSample {
            x: -1.0,
            y: -inv_e,
            series_label: "point".into(),
        });
        return Ok(out);
    };

    let (x_lo, x_hi) = layout.exp_range;
    if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
        return Err(PlotError::Range("x range must satisfy x_min < x_max"));
    }
    if x_hi <= 0.0 {
        return Err(PlotError::Range("x_max must be positive to show log_b x"));
    }
    let base = Base::new(layout.base)?;
    let b = base.get();
    let ln_b = b.ln();
    sample_series("exp", layout.exp_range, samples, |x| b.powf(x), &mut out);
    sample_series(
        "log",
        layout.log_range,
        samples,
        |x| x.ln() / ln_b,
        &mut out,
    );
    sample_series("bisectrix", layout.bisectrix, 2, |x| x, &mut out);

    let report = diagonal_intersections(base, &EvalConfig::default())?;
    for p in &report.points {
        out.push(CurveSample {
            x: p.x,
            y: p.y,
            series_label: "point".into(),
        });
    }
    Ok(out)
}

pub fn write_samples<W: Write>(out: W, samples: &[CurveSample]) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["x", "y", "series_label"])?;
    for s in samples {
        w.write_record([fmt_num(s.x), fmt_num(s.y), s.series_label.clone()])?;
    }
    w.flush()
}

//! Plot-ready datasets for the standard figures.
//!
//! Every dataset is long-format CSV: a header, then rows whose first column
//! names the curve (`series`). Trailing `#` lines record the grid choices so
//! the header stays the first line of the file.

use std::f64::consts::TAU;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::{
    format_value, region_label, run_sweep, write_row, LengthGrid, Observable, SweepError, SweepSpec,
};
use crate::model::{spectrum, DeltaSign, SystemParams};
use crate::observables::{STRONGER_CRITERION, WEAKER_CRITERION};

const FIGURE_DELTAS: [f64; 3] = [0.8, 1.0, 1.2];
const NEGATIVITY_DELTAS: [f64; 5] = [0.8, 0.95, 1.0, 1.05, 1.2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Eigenvalues against `δ`.
    Fig1b,
    /// `P1`, `P2` against `κL`.
    Fig2,
    /// `E1`, `E2` over `(φ, κL)`.
    Fig3,
    /// `E1`, `E2` against `κL` at `φ = 0`.
    Fig4,
    /// Single-mode variance against `κL`.
    FigS1,
    /// Logarithmic negativity curves and `(δ, κL)` map.
    FigS2,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig1b,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::FigS1,
        Figure::FigS2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig1b => "fig1b",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::FigS1 => "figS1",
            Figure::FigS2 => "figS2",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SweepError::UnknownFigure(s.to_string()))
    }
}

fn curve_spec(
    deltas: &[f64],
    phis: Vec<f64>,
    lengths: LengthGrid,
    obs: &[Observable],
) -> SweepSpec {
    SweepSpec {
        kappa: 1.0,
        delta_ratios: deltas.to_vec(),
        delta_sign: DeltaSign::Negative,
        phis,
        lengths,
        observables: obs.to_vec(),
    }
}

fn header<W: Write>(out: &mut W, spec: &SweepSpec) -> Result<(), SweepError> {
    writeln!(out, "series,{}", spec.header().join(","))?;
    Ok(())
}

/// One series per `δ`, labelled `delta=<δ>`.
fn per_delta<W: Write>(out: &mut W, spec: &SweepSpec) -> Result<(), SweepError> {
    for &d in &spec.delta_ratios {
        let single = SweepSpec {
            delta_ratios: vec![d],
            ..spec.clone()
        };
        let label = format!("delta={d}");
        for row in run_sweep(&single)? {
            write_row(out, Some(&label), &row?)?;
        }
    }
    Ok(())
}

/// Constant rows at both ends of the length grid.
fn level_rows<W: Write>(
    out: &mut W,
    label: &str,
    lengths: &LengthGrid,
    values: &[f64],
) -> Result<(), SweepError> {
    for kl in [lengths.start, lengths.stop] {
        write!(out, "{label},,,{},", format_value(kl))?;
        for v in values {
            write!(out, ",{}", format_value(*v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn metadata<W: Write>(out: &mut W, figure: Figure, lines: &[String]) -> Result<(), SweepError> {
    writeln!(out, "# figure: {figure}")?;
    writeln!(
        out,
        "# kappa: 1, detuning branch: negative (Delta = -delta*kappa)"
    )?;
    for l in lines {
        writeln!(out, "# {l}")?;
    }
    writeln!(
        out,
        "# ranges are chosen to show the qualitative features, not axis limits"
    )?;
    Ok(())
}

fn fig1b<W: Write>(out: &mut W) -> Result<(), SweepError> {
    let grid = LengthGrid::new(0.0, 2.0, 401);
    writeln!(
        out,
        "series,delta_ratio,region,lambda_single_re,lambda_single_im,lambda_two_re,lambda_two_im"
    )?;
    for d in grid.iter() {
        let s = spectrum(&SystemParams::from_ratio(1.0, d, DeltaSign::Negative, 0.0)?);
        writeln!(
            out,
            "lambda_plus,{},{},{},{},{},{}",
            format_value(d),
            region_label(&s.region),
            format_value(s.lambda_single[0].re),
            format_value(s.lambda_single[0].im),
            format_value(s.lambda_two_mode[0].re),
            format_value(s.lambda_two_mode[0].im),
        )?;
    }
    metadata(
        out,
        Figure::Fig1b,
        &[
            "delta_ratio: 0:2:401, phi: 0".into(),
            "lambda_minus = -lambda_plus".into(),
        ],
    )
}

/// Writes the dataset for `figure`.
pub fn reproduce_figure<W: Write>(figure: Figure, out: &mut W) -> Result<(), SweepError> {
    let line = LengthGrid::default();
    match figure {
        Figure::Fig1b => fig1b(out),
        Figure::Fig2 => {
            let spec = curve_spec(
                &FIGURE_DELTAS,
                vec![0.0],
                line,
                &[Observable::P1, Observable::P2],
            );
            header(out, &spec)?;
            per_delta(out, &spec)?;
            metadata(out, figure, &["kappa_L: 0:5:501, phi: 0".into()])
        }
        Figure::Fig3 => {
            let phis = (0..201).map(|j| TAU * f64::from(j) / 201.0).collect();
            let spec = curve_spec(
                &FIGURE_DELTAS,
                phis,
                LengthGrid::new(0.0, 5.0, 201),
                &[Observable::E1, Observable::E2],
            );
            header(out, &spec)?;
            per_delta(out, &spec)?;
            metadata(
                out,
                figure,
                &["phi: 201 points on [0, 2pi), kappa_L: 0:5:201".into()],
            )
        }
        Figure::Fig4 => {
            let spec = curve_spec(
                &FIGURE_DELTAS,
                vec![0.0],
                line,
                &[Observable::E1, Observable::E2],
            );
            header(out, &spec)?;
            per_delta(out, &spec)?;
            level_rows(out, "weaker_criterion", &line, &[WEAKER_CRITERION; 2])?;
            level_rows(out, "stronger_criterion", &line, &[STRONGER_CRITERION; 2])?;
            metadata(
                out,
                figure,
                &[
                    "kappa_L: 0:5:501, phi: 0".into(),
                    format!("thresholds: weaker {WEAKER_CRITERION}, stronger {STRONGER_CRITERION}"),
                ],
            )
        }
        Figure::FigS1 => {
            let spec = curve_spec(&FIGURE_DELTAS, vec![0.0], line, &[Observable::VarQ]);
            header(out, &spec)?;
            per_delta(out, &spec)?;
            level_rows(out, "vacuum", &line, &[0.25])?;
            metadata(
                out,
                figure,
                &["kappa_L: 0:5:501, phi: 0, vacuum level 0.25".into()],
            )
        }
        Figure::FigS2 => {
            let spec = curve_spec(&NEGATIVITY_DELTAS, vec![0.0], line, &[Observable::EN]);
            header(out, &spec)?;
            per_delta(out, &spec)?;
            let grid = SweepSpec {
                delta_ratios: LengthGrid::new(0.0, 2.0, 101).iter().collect(),
                lengths: LengthGrid::new(0.0, 5.0, 101),
                ..spec
            };
            for row in run_sweep(&grid)? {
                write_row(out, Some("grid"), &row?)?;
            }
            metadata(
                out,
                figure,
                &[
                    "curves: kappa_L 0:5:501, phi: 0".into(),
                    "grid: delta_ratio 0:2:101, kappa_L 0:5:101".into(),
                ],
            )
        }
    }
}

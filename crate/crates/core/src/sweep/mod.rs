//! Parameter sweeps and deterministic CSV output.
//!
//! A sweep is the Cartesian product `δ × φ × κL` (δ outermost, κL innermost),
//! produced lazily one row at a time so memory does not grow with the grid.

pub mod config;
pub mod figures;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::model::{spectrum, DeltaSign, ModelError, SymmetryRegion, SystemParams};
use crate::observables::{
    cnp, inseparability, log_negativity, single_mode_variance, ObservablesError,
};

pub use config::{parse_config, parse_config_str};
pub use figures::{reproduce_figure, Figure};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid {field}: {message}")]
    InvalidSpec {
        field: &'static str,
        message: String,
    },
    #[error("line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("unknown figure '{0}', expected one of: fig1b, fig2, fig3, fig4, figS1, figS2")]
    UnknownFigure(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Observables(#[from] ObservablesError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl SweepError {
    /// Usage, configuration and I/O problems, as opposed to numerical failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            SweepError::InvalidSpec { .. }
                | SweepError::Config { .. }
                | SweepError::UnknownKey { .. }
                | SweepError::UnknownFigure(_)
                | SweepError::Model(_)
                | SweepError::Io(_)
        )
    }
}

fn invalid(field: &'static str, message: impl Into<String>) -> SweepError {
    SweepError::InvalidSpec {
        field,
        message: message.into(),
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl LengthGrid {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.value(i))
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(invalid("lengths", "bounds must be finite"));
        }
        if self.count < 2 {
            return Err(invalid(
                "lengths",
                format!("count must be at least 2, got {}", self.count),
            ));
        }
        if self.start < 0.0 {
            return Err(invalid(
                "lengths",
                format!("start must be >= 0, got {}", self.start),
            ));
        }
        if !(self.stop > self.start) {
            return Err(invalid(
                "lengths",
                format!("stop ({}) must exceed start ({})", self.stop, self.start),
            ));
        }
        Ok(())
    }
}

impl Default for LengthGrid {
    fn default() -> Self {
        Self::new(0.0, 5.0, 501)
    }
}

impl FromStr for LengthGrid {
    type Err = String;

    /// `start:stop:count`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:count, got '{s}'"));
        }
        let start = parts[0]
            .parse::<f64>()
            .map_err(|e| format!("bad start '{}': {e}", parts[0]))?;
        let stop = parts[1]
            .parse::<f64>()
            .map_err(|e| format!("bad stop '{}': {e}", parts[1]))?;
        let count = parts[2]
            .parse::<usize>()
            .map_err(|e| format!("bad count '{}': {e}", parts[2]))?;
        Ok(Self::new(start, stop, count))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    P1,
    P2,
    E1,
    E2,
    EN,
    VarQ,
    Eigenvalues,
}

impl Observable {
    pub const ALL: [Observable; 7] = [
        Observable::P1,
        Observable::P2,
        Observable::E1,
        Observable::E2,
        Observable::EN,
        Observable::VarQ,
        Observable::Eigenvalues,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Observable::P1 => "p1",
            Observable::P2 => "p2",
            Observable::E1 => "e1",
            Observable::E2 => "e2",
            Observable::EN => "e_n",
            Observable::VarQ => "var_q",
            Observable::Eigenvalues => "eigenvalues",
        }
    }

    /// CSV columns contributed by this observable.
    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            Observable::P1 => &["p1"],
            Observable::P2 => &["p2"],
            Observable::E1 => &["e1"],
            Observable::E2 => &["e2"],
            Observable::EN => &["e_n"],
            Observable::VarQ => &["var_q"],
            Observable::Eigenvalues => &[
                "lambda_single_re",
                "lambda_single_im",
                "lambda_two_re",
                "lambda_two_im",
            ],
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Observable::ALL
            .iter()
            .copied()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown observable '{s}', expected one of: p1, p2, e1, e2, e_n, var_q, eigenvalues")
            })
    }
}

/// Parses a comma-separated observable list.
pub fn parse_observables(s: &str) -> Result<Vec<Observable>, String> {
    s.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kappa: f64,
    pub delta_ratios: Vec<f64>,
    pub delta_sign: DeltaSign,
    pub phis: Vec<f64>,
    /// Grid in units of `κL`.
    pub lengths: LengthGrid,
    pub observables: Vec<Observable>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            kappa: 1.0,
            delta_ratios: vec![0.8, 1.0, 1.2],
            delta_sign: DeltaSign::Negative,
            phis: vec![0.0],
            lengths: LengthGrid::default(),
            observables: Observable::ALL.to_vec(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        self.validate_points()?;
        self.lengths.validate()
    }

    /// Checks every field except the length grid.
    pub fn validate_points(&self) -> Result<(), SweepError> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(invalid(
                "kappa",
                format!("must be positive and finite, got {}", self.kappa),
            ));
        }
        if self.delta_ratios.is_empty() {
            return Err(invalid("delta_ratios", "at least one value is required"));
        }
        if let Some(d) = self
            .delta_ratios
            .iter()
            .find(|d| !(d.is_finite() && **d >= 0.0))
        {
            return Err(invalid(
                "delta_ratios",
                format!("values must be finite and >= 0, got {d}"),
            ));
        }
        if self.phis.is_empty() {
            return Err(invalid("phis", "at least one value is required"));
        }
        if let Some(p) = self.phis.iter().find(|p| !p.is_finite()) {
            return Err(invalid("phis", format!("values must be finite, got {p}")));
        }
        if self.observables.is_empty() {
            return Err(invalid(
                "observables",
                "at least one observable is required",
            ));
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.delta_ratios.len() * self.phis.len() * self.lengths.count
    }

    /// Header columns, fixed order.
    pub fn header(&self) -> Vec<&'static str> {
        let mut cols = vec!["delta_ratio", "phi", "kappa_L", "region"];
        for o in &self.observables {
            cols.extend_from_slice(o.columns());
        }
        cols
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub delta_ratio: f64,
    pub phi: f64,
    pub kappa_l: f64,
    pub region: SymmetryRegion,
    /// One entry per column of the requested observables, in header order.
    pub values: Vec<f64>,
}

/// Text label of a region pair, e.g. `APT_SYMMETRIC/PT_BROKEN`.
pub fn region_label(region: &SymmetryRegion) -> String {
    format!("{}/{}", region.kind.label(), region.two_mode_kind.label())
}

/// Evaluates the requested observables at one grid point through the
/// observables-module entry points.
pub fn evaluate_row(
    kappa: f64,
    delta_ratio: f64,
    sign: DeltaSign,
    phi: f64,
    kappa_l: f64,
    observables: &[Observable],
) -> Result<SweepRow, SweepError> {
    let params = SystemParams::from_ratio(kappa, delta_ratio, sign, phi)?;
    let l = kappa_l / kappa;
    let mut values = Vec::with_capacity(observables.len() + 3);
    let mut cnp_cache = None;
    let mut e_cache = None;
    for o in observables {
        match o {
            Observable::P1 | Observable::P2 => {
                let (p1, p2) = match cnp_cache {
                    Some(v) => v,
                    None => *cnp_cache.insert(cnp(&params, l)?),
                };
                values.push(if *o == Observable::P1 { p1 } else { p2 });
            }
            Observable::E1 | Observable::E2 => {
                let (e1, e2) = match e_cache {
                    Some(v) => v,
                    None => *e_cache.insert(inseparability(&params, l)?),
                };
                values.push(if *o == Observable::E1 { e1 } else { e2 });
            }
            Observable::EN => values.push(log_negativity(&params, l)?),
            Observable::VarQ => values.push(single_mode_variance(&params, l)?),
            Observable::Eigenvalues => {
                let s = spectrum(&params);
                values.extend([
                    s.lambda_single[0].re,
                    s.lambda_single[0].im,
                    s.lambda_two_mode[0].re,
                    s.lambda_two_mode[0].im,
                ]);
            }
        }
    }
    Ok(SweepRow {
        delta_ratio,
        phi: params.phi(),
        kappa_l,
        region: params.region(),
        values,
    })
}

/// Lazy row stream in `δ`, `φ`, `κL` order.
pub struct SweepIter<'a> {
    spec: &'a SweepSpec,
    index: usize,
}

impl Iterator for SweepIter<'_> {
    type Item = Result<SweepRow, SweepError>;

    fn next(&mut self) -> Option<Self::Item> {
        let spec = self.spec;
        if self.index >= spec.row_count() {
            return None;
        }
        let n_l = spec.lengths.count;
        let n_phi = spec.phis.len();
        let i = self.index;
        self.index += 1;
        let li = i % n_l;
        let pi = (i / n_l) % n_phi;
        let di = i / (n_l * n_phi);
        Some(evaluate_row(
            spec.kappa,
            spec.delta_ratios[di],
            spec.delta_sign,
            spec.phis[pi],
            spec.lengths.value(li),
            &spec.observables,
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.spec.row_count() - self.index;
        (left, Some(left))
    }
}

/// Validates a sweep spec and returns the row stream.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepIter<'_>, SweepError> {
    spec.validate()?;
    Ok(SweepIter { spec, index: 0 })
}

/// 17 significant digits in scientific notation; `-0` prints as `0`.
pub fn format_value(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Writes one CSV record, with an optional leading `series` field.
pub fn write_row<W: Write>(out: &mut W, series: Option<&str>, row: &SweepRow) -> io::Result<()> {
    if let Some(s) = series {
        write!(out, "{s},")?;
    }
    write!(
        out,
        "{},{},{},{}",
        format_value(row.delta_ratio),
        format_value(row.phi),
        format_value(row.kappa_l),
        region_label(&row.region)
    )?;
    for v in &row.values {
        write!(out, ",{}", format_value(*v))?;
    }
    out.write_all(b"\n")
}

/// Writes the header and every row; returns the number of rows.
pub fn write_csv<W: Write>(spec: &SweepSpec, out: &mut W) -> Result<usize, SweepError> {
    let rows = run_sweep(spec)?;
    writeln!(out, "{}", spec.header().join(","))?;
    let mut n = 0;
    for row in rows {
        write_row(out, None, &row?)?;
        n += 1;
    }
    Ok(n)
}

/// One row per `(δ, φ)` at a single `κL` with every observable.
pub fn write_report<W: Write>(
    spec: &SweepSpec,
    kappa_l: f64,
    out: &mut W,
) -> Result<usize, SweepError> {
    spec.validate_points()?;
    if !(kappa_l.is_finite() && kappa_l >= 0.0) {
        return Err(invalid(
            "length",
            format!("must be finite and >= 0, got {kappa_l}"),
        ));
    }
    writeln!(out, "{}", spec.header().join(","))?;
    let mut n = 0;
    for &d in &spec.delta_ratios {
        for &phi in &spec.phis {
            let row = evaluate_row(
                spec.kappa,
                d,
                spec.delta_sign,
                phi,
                kappa_l,
                &spec.observables,
            )?;
            crate::observables::report(
                &SystemParams::from_ratio(spec.kappa, d, spec.delta_sign, phi)?,
                kappa_l / spec.kappa,
            )?;
            write_row(out, None, &row)?;
            n += 1;
        }
    }
    Ok(n)
}

/// Eigenvalues and region for each `δ` (and `φ`) of a sweep spec.
pub fn write_eigs<W: Write>(spec: &SweepSpec, out: &mut W) -> Result<usize, SweepError> {
    spec.validate_points()?;
    writeln!(
        out,
        "delta_ratio,phi,region,lambda_single_re,lambda_single_im,lambda_two_re,lambda_two_im"
    )?;
    let mut n = 0;
    for &d in &spec.delta_ratios {
        for &phi in &spec.phis {
            let params = SystemParams::from_ratio(spec.kappa, d, spec.delta_sign, phi)?;
            let s = spectrum(&params);
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                format_value(d),
                format_value(params.phi()),
                region_label(&s.region),
                format_value(s.lambda_single[0].re),
                format_value(s.lambda_single[0].im),
                format_value(s.lambda_two_mode[0].re),
                format_value(s.lambda_two_mode[0].im),
            )?;
            n += 1;
        }
    }
    Ok(n)
}

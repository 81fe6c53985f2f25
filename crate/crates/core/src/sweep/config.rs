//! `key = value` sweep configuration files.
//!
//! ```text
//! # comments start with '#'
//! kappa = 1.0
//! delta_ratios = 0.8, 1, 1.2
//! delta_sign = negative
//! phis = 0, 1.5707963267948966
//! lengths = 0:5:501
//! observables = p1, p2, e1, e2, e_n, var_q, eigenvalues
//! ```
//!
//! Missing keys keep the [`SweepSpec::default`] values. The parsed spec is
//! not validated here; [`run_sweep`](super::run_sweep) does that.

use std::fs;
use std::path::Path;

use super::{parse_observables, SweepError, SweepSpec};

fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .map_err(|e| format!("bad number '{v}': {e}"))
        })
        .collect()
}

/// Parses configuration text into a spec.
pub fn parse_config_str(text: &str) -> Result<SweepSpec, SweepError> {
    let mut spec = SweepSpec::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| SweepError::Config {
            line,
            message: format!("expected 'key = value', got '{content}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let err = |message: String| SweepError::Config { line, message };
        match key {
            "kappa" => {
                spec.kappa = value
                    .parse()
                    .map_err(|e| err(format!("bad kappa '{value}': {e}")))?;
            }
            "delta_ratios" => spec.delta_ratios = parse_list(value).map_err(err)?,
            "delta_sign" => spec.delta_sign = value.parse().map_err(err)?,
            "phis" => spec.phis = parse_list(value).map_err(err)?,
            "lengths" => spec.lengths = value.parse().map_err(err)?,
            "observables" => spec.observables = parse_observables(value).map_err(err)?,
            other => {
                return Err(SweepError::UnknownKey {
                    line,
                    key: other.to_string(),
                })
            }
        }
    }
    Ok(spec)
}

/// Reads and parses a configuration file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<SweepSpec, SweepError> {
    let text = fs::read_to_string(path)?;
    parse_config_str(&text)
}

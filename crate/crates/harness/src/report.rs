//! Report serialization.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiment::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

pub const CSV_COLUMNS: [&str; 10] = [
    "mode",
    "class",
    "dim",
    "epsilon",
    "trials",
    "pass",
    "fail",
    "max_residual",
    "max_bound_ratio",
    "ms",
];

pub const PLOT_COLUMNS: [&str; 4] = [
    "class",
    "epsilon",
    "theoretical_bound",
    "observed_max_distance",
];

/// Shortest round-trip form, in exponent notation for small magnitudes.
fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn emit_report<W: Write>(report: &Report, format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in &report.rows {
                w.write_record([
                    r.mode.to_string(),
                    r.class.to_string(),
                    r.dim.to_string(),
                    r.epsilon.to_string(),
                    r.trials.to_string(),
                    r.pass.to_string(),
                    r.fail.to_string(),
                    num(r.max_residual),
                    num(r.max_bound_ratio),
                    r.ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// One line per `(class, ε)`, maximizing over dimensions.
pub fn emit_plotdata<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut points: Vec<(String, f64, f64, f64)> = Vec::new();
    for r in &report.rows {
        let class = r.class.to_string();
        match points.iter_mut().find(|p| p.0 == class && p.1 == r.epsilon) {
            Some(p) => {
                p.2 = p.2.max(r.theoretical_bound);
                p.3 = p.3.max(r.max_distance);
            }
            None => points.push((class, r.epsilon, r.theoretical_bound, r.max_distance)),
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PLOT_COLUMNS)?;
    for (class, eps, bound, dist) in points {
        w.write_record([class, num(eps), num(bound), num(dist)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn parse_json_report(s: &str) -> Result<Report> {
    Ok(serde_json::from_str(s)?)
}

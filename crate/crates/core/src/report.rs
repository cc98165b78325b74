//! Pass/fail checks and the JSON solve report.
//!
//! Reports are written with sorted keys, compact separators and every float
//! in `{:.16e}` form (17 significant digits), so parsing and re-emitting a
//! report reproduces it byte for byte. Non-finite floats become `null`.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Outcome of one verification check with the measured quantity, if any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

impl Check {
    pub fn new(pass: bool, value: f64) -> Self {
        Check {
            pass,
            value: Some(value),
        }
    }

    pub fn flag(pass: bool) -> Self {
        Check { pass, value: None }
    }

    /// Passes when `value <= bound`.
    pub fn at_most(value: f64, bound: f64) -> Self {
        Check::new(value <= bound, value)
    }
}

/// Named checks in sorted order.
pub type Checks = BTreeMap<String, Check>;

pub fn all_pass(checks: &Checks) -> bool {
    checks.values().all(|c| c.pass)
}

/// Summary of a solver run. Fields are declared in key order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_bound: Option<f64>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_grad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t_steps: Vec<f64>,
}

impl SolveReport {
    pub fn all_pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Serializes any value with the report float format.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Writes `report` to `path` followed by a newline.
pub fn emit_report(report: &SolveReport, path: &Path) -> Result<()> {
    let mut text = to_json(report)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn parse_report(text: &str) -> Result<SolveReport> {
    Ok(serde_json::from_str(text)?)
}

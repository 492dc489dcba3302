//! Report records and their JSON, CSV and text renderings.

use crate::config::SuiteConfig;
use quatrep::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// A complex number as `{re, im}`; real checks carry `im = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    #[serde(deserialize_with = "nan_if_null")]
    pub re: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub im: f64,
}

/// Non-finite values are written as `null`; read them back as NaN.
fn nan_if_null<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<f64> for Cx {
    fn from(x: f64) -> Self {
        Self { re: x, im: 0.0 }
    }
}

impl Cx {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Parameter values echoed per check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Float(x)
    }
}

macro_rules! int_param {
    ($($t:ty),*) => {$(
        impl From<$t> for Param {
            fn from(x: $t) -> Self {
                Param::Int(x as i64)
            }
        }
    )*};
}

int_param!(i32, i64, u8, usize);

impl From<&str> for Param {
    fn from(x: &str) -> Self {
        Param::Text(x.to_string())
    }
}

impl From<String> for Param {
    fn from(x: String) -> Self {
        Param::Text(x)
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Float(v) => write!(f, "{v}"),
            Param::Text(v) => f.write_str(v),
        }
    }
}

/// One verified identity. Passes iff
/// `abs_error ≤ max(tolerance·|reference|, abs_floor)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// Name of the identity or formula being checked.
    pub anchor: String,
    pub parameters: BTreeMap<String, Param>,
    pub computed: Cx,
    pub reference: Cx,
    #[serde(deserialize_with = "nan_if_null")]
    pub abs_error: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub rel_error: f64,
    pub tolerance: f64,
    pub abs_floor: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub config_echo: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub wall_ms: u64,
    /// Set when a numerical stage failed to converge; drives exit code 3.
    #[serde(default)]
    pub non_convergence: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// `0` all pass, `1` a check failed, `3` a stage did not converge.
    pub fn exit_code(&self) -> i32 {
        if self.non_convergence {
            3
        } else if self.all_passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Writes floats with 17 significant digits and non-finite values as `null`.
struct WideFloats;

impl serde_json::ser::Formatter for WideFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json(rep: &VerificationReport) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, WideFloats);
    rep.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    Ok(buf)
}

pub fn to_csv(rep: &VerificationReport) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "check_id",
        "anchor",
        "parameters",
        "computed_re",
        "computed_im",
        "reference_re",
        "reference_im",
        "abs_error",
        "rel_error",
        "tolerance",
        "abs_floor",
        "pass",
        "note",
    ])?;
    for c in &rep.checks {
        let params = c
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            c.check_id.clone(),
            c.anchor.clone(),
            params,
            sci(c.computed.re),
            sci(c.computed.im),
            sci(c.reference.re),
            sci(c.reference.im),
            sci(c.abs_error),
            sci(c.rel_error),
            sci(c.tolerance),
            sci(c.abs_floor),
            c.pass.to_string(),
            c.note.clone().unwrap_or_default(),
        ])?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

pub fn to_text(rep: &VerificationReport) -> Vec<u8> {
    let mut s = String::new();
    let width = rep.checks.iter().map(|c| c.check_id.len()).max().unwrap_or(8);
    let _ = writeln!(s, "suite {} (schema {})", rep.suite, rep.schema_version);
    for c in &rep.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = write!(
            s,
            "{verdict}  {:<width$}  abs {:>10.3e}  rel {:>10.3e}  tol {:>9.2e}",
            c.check_id, c.abs_error, c.rel_error, c.tolerance
        );
        if let Some(note) = &c.note {
            let _ = write!(s, "  ({note})");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "passed {}  failed {}  skipped {}  wall {} ms",
        rep.summary.passed, rep.summary.failed, rep.summary.skipped, rep.wall_ms
    );
    s.into_bytes()
}

pub fn render(rep: &VerificationReport, format: OutputFormat) -> io::Result<Vec<u8>> {
    match format {
        OutputFormat::Json => to_json(rep),
        OutputFormat::Csv => to_csv(rep),
        OutputFormat::Text => Ok(to_text(rep)),
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(rep: &VerificationReport, format: OutputFormat, path: Option<&Path>) -> io::Result<()> {
    let bytes = render(rep, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| io::Error::new(e.kind(), format!("writing report to {}: {e}", p.display()))),
        None => io::stdout().lock().write_all(&bytes),
    }
}

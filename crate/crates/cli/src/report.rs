//! Check records, the suite report and its canonical JSON/CSV forms.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{SuiteConfig, SuiteName};
use crate::error::EmitError;

/// Significant digits kept in emitted numbers.
pub const SIGNIFICANT_DIGITS: usize = 12;

fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// A reported real, rounded to [`SIGNIFICANT_DIGITS`] on construction.
///
/// Non-finite values serialize as the strings `"inf"`, `"-inf"` and
/// `"nan"`.
#[derive(Debug, Clone, Copy)]
pub struct Number(f64);

impl Number {
    pub fn new(x: f64) -> Number {
        Number(round_significant(x))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Number {
        Number::new(x)
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Number) -> bool {
        self.0 == other.0 || (self.0.is_nan() && other.0.is_nan())
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            x if x.is_nan() => f.write_str("nan"),
            x if x == f64::INFINITY => f.write_str("inf"),
            x if x == f64::NEG_INFINITY => f.write_str("-inf"),
            x if x != 0.0 && !(1e-4..1e15).contains(&x.abs()) => write!(f, "{x:e}"),
            x => write!(f, "{x}"),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Number, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Number::new(x)),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(Number(f64::INFINITY)),
                "-inf" => Ok(Number(f64::NEG_INFINITY)),
                "nan" => Ok(Number(f64::NAN)),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number, \"inf\", \"-inf\" or \"nan\", found {other:?}"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check degenerated (`0/0`) and asserts nothing.
    Trivial,
}

/// How `value` is compared with `bound` and `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `value ≤ bound + tolerance`.
    Le,
    /// `value ≥ bound − tolerance`.
    Ge,
    /// `value == bound`, exactly.
    Eq,
    /// `value` is finite.
    Finite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub suite: SuiteName,
    pub status: Status,
    pub relation: Relation,
    pub value: Number,
    pub bound: Number,
    pub tolerance: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn judged(
        suite: SuiteName,
        id: impl Into<String>,
        relation: Relation,
        value: f64,
        bound: f64,
        tolerance: f64,
    ) -> Check {
        let pass = match relation {
            Relation::Le => value <= bound + tolerance,
            Relation::Ge => value >= bound - tolerance,
            Relation::Eq => value == bound,
            Relation::Finite => value.is_finite(),
        };
        Check {
            id: id.into(),
            suite,
            status: if pass { Status::Pass } else { Status::Fail },
            relation,
            value: value.into(),
            bound: bound.into(),
            tolerance: tolerance.into(),
            note: None,
        }
    }

    pub fn at_most(
        suite: SuiteName,
        id: impl Into<String>,
        value: f64,
        bound: f64,
        tol: f64,
    ) -> Check {
        Check::judged(suite, id, Relation::Le, value, bound, tol)
    }

    pub fn at_least(
        suite: SuiteName,
        id: impl Into<String>,
        value: f64,
        bound: f64,
        tol: f64,
    ) -> Check {
        Check::judged(suite, id, Relation::Ge, value, bound, tol)
    }

    pub fn exactly(suite: SuiteName, id: impl Into<String>, value: f64, bound: f64) -> Check {
        Check::judged(suite, id, Relation::Eq, value, bound, 0.0)
    }

    pub fn finite(suite: SuiteName, id: impl Into<String>, value: f64) -> Check {
        Check::judged(suite, id, Relation::Finite, value, f64::INFINITY, 0.0)
    }

    /// A check whose computation raised an error.
    pub fn errored(suite: SuiteName, id: impl Into<String>, error: impl fmt::Display) -> Check {
        Check {
            id: id.into(),
            suite,
            status: Status::Fail,
            relation: Relation::Finite,
            value: Number(f64::NAN),
            bound: Number(f64::INFINITY),
            tolerance: Number(0.0),
            note: Some(error.to_string()),
        }
    }

    pub fn trivial_if(mut self, trivial: bool) -> Check {
        if trivial {
            self.status = Status::Trivial;
        }
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: Number,
    pub y: Number,
}

/// A curve for plotting, typically level `j` against a ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub id: String,
    pub suite: SuiteName,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<Point>,
}

impl Series {
    pub fn new(
        suite: SuiteName,
        id: impl Into<String>,
        x_label: &str,
        y_label: &str,
        ys: &[f64],
    ) -> Series {
        Series {
            id: id.into(),
            suite,
            x_label: x_label.into(),
            y_label: y_label.into(),
            points: ys
                .iter()
                .enumerate()
                .map(|(j, &y)| Point {
                    x: (j as f64).into(),
                    y: y.into(),
                })
                .collect(),
        }
    }
}

/// Build facts only; nothing here varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub tool: String,
    pub version: String,
    pub target_os: String,
    pub target_arch: String,
    pub significant_digits: usize,
}

impl Environment {
    pub fn current() -> Environment {
        Environment {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            target_os: std::env::consts::OS.into(),
            target_arch: std::env::consts::ARCH.into(),
            significant_digits: SIGNIFICANT_DIGITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub environment: Environment,
    pub config: SuiteConfig,
    pub checks: Vec<Check>,
    pub series: Vec<Series>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    suite: SuiteName,
    status: Status,
    relation: Relation,
    value: String,
    bound: String,
    tolerance: String,
    note: &'a str,
}

/// Serializes a report; JSON keeps field order and ends with a newline.
pub fn emit(report: &SuiteReport, format: Format) -> Result<Vec<u8>, EmitError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if report.checks.is_empty() {
                w.write_record([
                    "id",
                    "suite",
                    "status",
                    "relation",
                    "value",
                    "bound",
                    "tolerance",
                    "note",
                ])?;
            }
            for c in &report.checks {
                w.serialize(CsvRow {
                    id: &c.id,
                    suite: c.suite,
                    status: c.status,
                    relation: c.relation,
                    value: c.value.to_string(),
                    bound: c.bound.to_string(),
                    tolerance: c.tolerance.to_string(),
                    note: c.note.as_deref().unwrap_or(""),
                })?;
            }
            Ok(w.into_inner().map_err(|e| e.into_error())?)
        }
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<SuiteReport, serde_json::Error> {
    serde_json::from_slice(bytes)
}

/// Every series as `series,suite,x,y` rows.
pub fn emit_plot(report: &SuiteReport) -> Result<Vec<u8>, EmitError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["series", "suite", "x", "y"])?;
    for s in &report.series {
        for p in &s.points {
            w.write_record([
                s.id.as_str(),
                s.suite.as_str(),
                &p.x.to_string(),
                &p.y.to_string(),
            ])?;
        }
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

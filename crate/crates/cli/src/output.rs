//! Run reports and their JSON/CSV encodings.

use std::io::Write;
use std::path::Path;

use mixvol::report::{InequalityReport, Verdict, CLOSED_FORM_TOL, QUADRATURE_TOL};
use mixvol::sweep::{SweepRow, SweepSummary};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Tolerances and quadrature rules in force for a run.
#[derive(Debug, Clone, Serialize)]
pub struct ToleranceRecord {
    pub closed_form: f64,
    pub quadrature: f64,
    /// Relative tolerance given with `--tol`, applied to every verdict.
    pub override_relative: Option<f64>,
    pub sphere_quadrature: String,
    pub circle_quadrature: String,
    pub harmonic_quadrature: String,
}

impl ToleranceRecord {
    pub fn new(tol: Option<f64>, sphere: &str, circle: &str, harmonic: &str) -> Self {
        ToleranceRecord {
            closed_form: tol.unwrap_or(CLOSED_FORM_TOL),
            quadrature: tol.unwrap_or(QUADRATURE_TOL),
            override_relative: tol,
            sphere_quadrature: sphere.to_string(),
            circle_quadrature: circle.to_string(),
            harmonic_quadrature: harmonic.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: String,
    pub expected: String,
    pub unexpected: bool,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub prng: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub tolerances: ToleranceRecord,
    pub checks: Vec<Check>,
    pub unexpected: usize,
    pub exit_code: i32,
}

/// Flat table written for `--format csv`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn sweep() -> Self {
        Table::new(&[
            "check",
            "trial",
            "inputs_digest",
            "lhs",
            "rhs",
            "gap",
            "relative_gap",
            "verdict",
            "equality_case",
        ])
    }

    pub fn push_sweep_row(&mut self, check: &str, r: &SweepRow) {
        self.rows.push(vec![
            check.to_string(),
            r.trial.to_string(),
            r.inputs_digest.clone(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.gap.to_string(),
            r.relative_gap.to_string(),
            r.verdict.to_string(),
            r.equality_case.clone().unwrap_or_default(),
        ]);
    }

    pub fn push_report(&mut self, check: &str, r: &InequalityReport) {
        self.push_sweep_row(check, &SweepRow::from_report(0, r));
    }
}

/// Accumulates checks and table rows while a command runs.
#[derive(Debug, Default)]
pub struct Collector {
    pub checks: Vec<Check>,
    pub table: Table,
}

impl Collector {
    pub fn new() -> Self {
        Collector {
            checks: Vec::new(),
            table: Table::sweep(),
        }
    }

    pub fn push(&mut self, name: &str, verdict: &str, expected: &str, unexpected: bool, result: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            verdict: verdict.to_string(),
            expected: expected.to_string(),
            unexpected,
            result,
        });
    }

    pub fn report(&mut self, name: &str, r: &InequalityReport) {
        let expected = serde_json::to_value(r.expected).unwrap_or(Value::Null);
        let expected = expected.as_str().unwrap_or_default().to_string();
        self.push(
            name,
            &r.verdict.to_string(),
            &expected,
            r.is_unexpected(),
            serde_json::to_value(r).unwrap_or(Value::Null),
        );
        self.table.push_report(name, r);
    }

    /// Sweep summary without the per-trial rows (those go to the table).
    pub fn sweep(&mut self, name: &str, s: &SweepSummary, expected: &str) {
        let mut value = serde_json::to_value(s).unwrap_or(Value::Null);
        if let Value::Object(map) = &mut value {
            map.remove("rows");
        }
        let verdict = if s.count(Verdict::Violated) > 0 {
            "violated"
        } else if s.count(Verdict::Equality) == s.trials {
            "equality"
        } else {
            "holds"
        };
        self.push(name, verdict, expected, s.unexpected > 0, value);
        for row in &s.rows {
            self.table.push_sweep_row(name, row);
        }
    }
}

pub fn timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

pub fn write(report: &RunReport, table: &Table, format: Format, out: Option<&Path>) -> std::io::Result<()> {
    let mut bytes = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut bytes, report)?;
            bytes.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut bytes);
            w.write_record(&table.headers)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(&bytes),
    }
}

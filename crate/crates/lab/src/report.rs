//! CSV tables and JSON summaries.
//!
//! Numbers are written as `{:.16e}` (17 significant digits, exact round
//! trip). Nothing time- or host-dependent is written, so a fixed config
//! gives byte-identical files.

use serde_json::{Map, Number, Value};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use timoshenko_core::experiments::NormRow;

/// Header of every time-series CSV.
pub const SERIES_HEADER: [&str; 7] = [
    "t",
    "norm_w_l2",
    "norm_w_h2",
    "norm_psi_l2",
    "norm_psi_h1",
    "shear_l2",
    "energy_l2",
];

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(fmt_num(x).parse::<Number>().expect("valid JSON number"))
    } else {
        Value::Null
    }
}

/// One CSV file; `suffix` is appended to the report stem.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub suffix: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(suffix: &str, header: &[&str]) -> Self {
        Self {
            suffix: suffix.to_string(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_nums(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| fmt_num(x)).collect());
    }
}

/// A time-series sample; columns an experiment does not compute are `None`
/// and written as empty cells.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeriesRow {
    pub t: f64,
    pub w_l2: f64,
    pub w_h2: f64,
    pub psi_l2: f64,
    pub psi_h1: f64,
    pub shear_l2: Option<f64>,
    pub energy_l2: Option<f64>,
}

impl From<&NormRow> for SeriesRow {
    fn from(r: &NormRow) -> Self {
        Self {
            t: r.t,
            w_l2: r.w_l2,
            w_h2: r.w_h2,
            psi_l2: r.psi_l2,
            psi_h1: r.psi_h1,
            shear_l2: Some(r.shear_l2),
            energy_l2: Some(r.energy_l2),
        }
    }
}

pub fn series_table(rows: &[SeriesRow]) -> Table {
    let mut t = Table::new("", &SERIES_HEADER);
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
    for r in rows {
        t.rows.push(vec![
            fmt_num(r.t),
            fmt_num(r.w_l2),
            fmt_num(r.w_h2),
            fmt_num(r.psi_l2),
            fmt_num(r.psi_h1),
            opt(r.shear_l2),
            opt(r.energy_l2),
        ]);
    }
    t
}

/// A fitted or measured quantity with its acceptance band `[lo, hi]`
/// (either end open when `None`).
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub stderr: Option<f64>,
    pub band: (Option<f64>, Option<f64>),
}

impl Check {
    pub fn new(name: &str, value: f64, lo: Option<f64>, hi: Option<f64>) -> Self {
        Self {
            name: name.to_string(),
            value,
            stderr: None,
            band: (lo, hi),
        }
    }

    pub fn with_stderr(mut self, stderr: f64) -> Self {
        self.stderr = Some(stderr);
        self
    }

    pub fn pass(&self) -> bool {
        self.value.is_finite()
            && self.band.0.is_none_or(|lo| self.value >= lo)
            && self.band.1.is_none_or(|hi| self.value <= hi)
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert(self.name.clone(), json_num(self.value));
        if let Some(s) = self.stderr {
            m.insert("stderr".into(), json_num(s));
        }
        let end = |b: Option<f64>| b.map(json_num).unwrap_or(Value::Null);
        m.insert("band".into(), Value::Array(vec![end(self.band.0), end(self.band.1)]));
        m.insert("pass".into(), Value::Bool(self.pass()));
        Value::Object(m)
    }

    pub fn line(&self) -> String {
        let end = |b: Option<f64>, open: &str| b.map(short).unwrap_or(open.into());
        format!(
            "{} {} = {} in [{}, {}]",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            short(self.value),
            end(self.band.0, "-inf"),
            end(self.band.1, "inf"),
        )
    }
}

fn short(x: f64) -> String {
    if x == 0.0 || (1e-3..1e4).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.3e}")
    }
}

/// Everything one run writes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub experiment: String,
    pub input_digest: String,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    /// Measured quantities without an acceptance band.
    pub values: Vec<(String, f64)>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    /// Keys are sorted; an empty report is `{}`.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        if !self.experiment.is_empty() {
            m.insert("experiment".into(), Value::String(self.experiment.clone()));
        }
        if !self.input_digest.is_empty() {
            m.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        }
        if !self.checks.is_empty() {
            m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
            m.insert("pass".into(), Value::Bool(self.pass()));
        }
        if !self.values.is_empty() {
            let v = self.values.iter().map(|(k, x)| (k.clone(), json_num(*x))).collect();
            m.insert("values".into(), Value::Object(v));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialise");
        s.push('\n');
        s
    }
}

pub fn table_csv(t: &Table) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header)?;
    for r in &t.rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV cells are UTF-8"))
}

/// Write `dir/stem{suffix}.csv` per table and `dir/stem.json`; returns the
/// paths written.
pub fn emit_reports(report: &Report, dir: &Path, stem: &str) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for t in &report.tables {
        let p = dir.join(format!("{stem}{}.csv", t.suffix));
        fs::write(&p, table_csv(t)?)?;
        paths.push(p);
    }
    let p = dir.join(format!("{stem}.json"));
    fs::write(&p, report.to_json())?;
    paths.push(p);
    Ok(paths)
}

//! The record every CLI command emits, and its CSV and JSON encodings.
//!
//! JSON is a single object. CSV is a long format whose first column names
//! the line kind, so that one file carries the parameters, the table and
//! the reports:
//!
//! ```text
//! kind,key,value
//! meta,schema_version,1
//! meta,command,phi
//! param,d,3
//! columns,sigma,phi
//! row,0.0000000000000000e0,1.0000000000000000e0
//! report,<name>,<lhs>,<rhs>,<abs_err>,<rel_err>,<tol_abs>,<tol_rel>,<pass>,<evaluations>,<wall_time_s>,<error>
//! ```

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};

use crate::report::{f17, format_f64, parse_f64, CheckReport};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("malformed record: {0}")]
    Malformed(String),
}

/// One table cell.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(#[serde(with = "f17")] pub f64);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub reports: Vec<CheckReport>,
}

const REPORT_FIELDS: usize = 11;

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            parameters: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            reports: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn with_columns(mut self, columns: &[&str]) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn push_row(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|&v| Cell(v)).collect());
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Result<String, OutputError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, OutputError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_csv(&self) -> Result<String, OutputError> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(["kind", "key", "value"])?;
        w.write_record(["meta", "schema_version", &self.schema_version])?;
        w.write_record(["meta", "command", &self.command])?;
        for (k, v) in &self.parameters {
            w.write_record(["param", k, v])?;
        }
        if !self.columns.is_empty() {
            w.write_record(std::iter::once("columns").chain(self.columns.iter().map(String::as_str)))?;
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| format_f64(c.0)).collect();
            w.write_record(std::iter::once("row".to_string()).chain(cells))?;
        }
        for r in &self.reports {
            w.write_record([
                "report".to_string(),
                r.name.clone(),
                format_f64(r.lhs),
                format_f64(r.rhs),
                format_f64(r.abs_err),
                format_f64(r.rel_err),
                format_f64(r.tol_abs),
                format_f64(r.tol_rel),
                r.pass.to_string(),
                r.evaluations.to_string(),
                format_f64(r.wall_time_s),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| OutputError::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| OutputError::Malformed(e.to_string()))
    }

    pub fn from_csv(s: &str) -> Result<Self, OutputError> {
        let mut rd = csv::ReaderBuilder::new()
            .flexible(true)
            .has_headers(true)
            .from_reader(s.as_bytes());
        let header = rd.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["kind", "key", "value"] {
            return Err(OutputError::Malformed("missing header row".into()));
        }
        let mut out = Self::new("");
        out.schema_version.clear();
        let num = |s: &str| parse_f64(s).map_err(|e| OutputError::Malformed(format!("{s:?}: {e}")));
        for rec in rd.records() {
            let rec = rec?;
            let fields: Vec<&str> = rec.iter().collect();
            let bad = || OutputError::Malformed(format!("{fields:?}"));
            match fields.first().copied() {
                Some("meta") if fields.len() == 3 => match fields[1] {
                    "schema_version" => out.schema_version = fields[2].into(),
                    "command" => out.command = fields[2].into(),
                    _ => return Err(bad()),
                },
                Some("param") if fields.len() == 3 => {
                    out.parameters.insert(fields[1].into(), fields[2].into());
                }
                Some("columns") => out.columns = fields[1..].iter().map(|c| c.to_string()).collect(),
                Some("row") => {
                    let row = fields[1..].iter().map(|c| num(c).map(Cell)).collect::<Result<_, _>>()?;
                    out.rows.push(row);
                }
                Some("report") if fields.len() == REPORT_FIELDS + 1 => {
                    let f = &fields[1..];
                    out.reports.push(CheckReport {
                        name: f[0].into(),
                        lhs: num(f[1])?,
                        rhs: num(f[2])?,
                        abs_err: num(f[3])?,
                        rel_err: num(f[4])?,
                        tol_abs: num(f[5])?,
                        tol_rel: num(f[6])?,
                        pass: f[7].parse().map_err(|_| bad())?,
                        evaluations: f[8].parse().map_err(|_| bad())?,
                        wall_time_s: num(f[9])?,
                        error: (!f[10].is_empty()).then(|| f[10].to_string()),
                    });
                }
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }

    pub fn encode(&self, format: Format) -> Result<String, OutputError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn decode(s: &str, format: Format) -> Result<Self, OutputError> {
        match format {
            Format::Csv => Self::from_csv(s),
            Format::Json => Self::from_json(s),
        }
    }

    /// Equality of every field, comparing floats by bit pattern (NaN equal to
    /// itself) and ignoring report wall times.
    pub fn same_content(&self, other: &Self) -> bool {
        let cell_eq = |a: &Cell, b: &Cell| a.0.to_bits() == b.0.to_bits() || (a.0.is_nan() && b.0.is_nan());
        self.schema_version == other.schema_version
            && self.command == other.command
            && self.parameters == other.parameters
            && self.columns == other.columns
            && self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| cell_eq(x, y)))
            && self.reports.len() == other.reports.len()
            && self.reports.iter().zip(&other.reports).all(|(a, b)| a.same_numbers(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Tolerance;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("phi")
            .param("d", 3)
            .param("grid", "0:1:0.25")
            .with_columns(&["sigma", "phi"]);
        r.push_row(&[0.0, 2.0 / 3.0]);
        r.push_row(&[0.25, f64::NAN]);
        r.reports.push(CheckReport::compare("with, comma", 1.0 / 7.0, 0.142857, Tolerance::rel(1e-3)));
        r.reports.push(CheckReport::failed("broken", "domain error: \"x\""));
        r
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        let s = r.to_csv().unwrap();
        assert!(s.starts_with("kind,key,value\n"));
        assert!(r.same_content(&OutputRecord::from_csv(&s).unwrap()));
    }

    #[test]
    fn json_round_trip_and_formats_agree() {
        let r = sample();
        let j = OutputRecord::from_json(&r.to_json().unwrap()).unwrap();
        let c = OutputRecord::from_csv(&r.to_csv().unwrap()).unwrap();
        assert!(r.same_content(&j));
        assert!(j.same_content(&c));
        assert_eq!(j.schema_version, "1");
    }

    #[test]
    fn rejects_missing_header() {
        assert!(OutputRecord::from_csv("meta,command,x\n").is_err());
    }
}

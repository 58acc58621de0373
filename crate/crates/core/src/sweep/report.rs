//! CSV and JSON sweep reports.
//!
//! CSV columns are `n,method,x1,x2,x3,status,hard`, with empty triple fields
//! when no triple exists. JSON is an array of objects with the same field
//! names and `null` for missing values.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use super::{Status, SweepError, SweepRecord};
use crate::triple::Method;

pub const CSV_HEADER: [&str; 7] = ["n", "method", "x1", "x2", "x3", "status", "hard"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

fn opt(v: Option<u128>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_report<W: Write>(records: &[SweepRecord], format: ReportFormat, w: W) -> io::Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(CSV_HEADER)?;
            for r in records {
                out.write_record([
                    r.n.to_string(),
                    r.method.to_string(),
                    opt(r.x1),
                    opt(r.x2),
                    opt(r.x3),
                    r.status.to_string(),
                    r.hard.to_string(),
                ])?;
            }
            out.flush()
        }
        ReportFormat::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, records)?;
            w.write_all(b"\n")?;
            w.flush()
        }
    }
}

/// Writes the report to `destination`, replacing any existing file.
pub fn emit_report(records: &[SweepRecord], format: ReportFormat, destination: &Path) -> Result<(), SweepError> {
    let io = |e| SweepError::io(destination, e);
    let file = File::create(destination).map_err(io)?;
    write_report(records, format, BufWriter::new(file)).map_err(io)
}

fn parse_field<T: std::str::FromStr>(row: usize, name: &str, s: &str) -> Result<T, SweepError>
where
    T::Err: std::fmt::Display,
{
    s.parse()
        .map_err(|e| SweepError::Report(format!("row {row}: bad {name} {s:?}: {e}")))
}

fn parse_opt(row: usize, name: &str, s: &str) -> Result<Option<u128>, SweepError> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_field(row, name, s).map(Some)
    }
}

fn read_csv(text: &str) -> Result<Vec<SweepRecord>, SweepError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| SweepError::Report(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(SweepError::Report(format!("unexpected CSV header {header:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| SweepError::Report(e.to_string()))?;
        let line = i + 2;
        out.push(SweepRecord {
            n: parse_field(line, "n", &row[0])?,
            method: parse_field::<Method>(line, "method", &row[1])?,
            x1: parse_opt(line, "x1", &row[2])?,
            x2: parse_opt(line, "x2", &row[3])?,
            x3: parse_opt(line, "x3", &row[4])?,
            status: parse_field::<Status>(line, "status", &row[5])?,
            hard: parse_field(line, "hard", &row[6])?,
            detail: None,
        });
    }
    Ok(out)
}

/// Parses a report, recognising JSON by a leading `[`.
pub fn read_report<R: Read>(mut r: R) -> Result<(ReportFormat, Vec<SweepRecord>), SweepError> {
    let mut text = String::new();
    r.read_to_string(&mut text)
        .map_err(|e| SweepError::Report(e.to_string()))?;
    if text.trim_start().starts_with('[') {
        let records = serde_json::from_str(&text).map_err(|e| SweepError::Report(e.to_string()))?;
        Ok((ReportFormat::Json, records))
    } else {
        Ok((ReportFormat::Csv, read_csv(&text)?))
    }
}

pub fn parse_report(path: &Path) -> Result<(ReportFormat, Vec<SweepRecord>), SweepError> {
    let file = File::open(path).map_err(|e| SweepError::io(path, e))?;
    read_report(file)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportStats {
    pub total: usize,
    pub by_method: BTreeMap<Method, usize>,
    pub by_status: BTreeMap<&'static str, usize>,
    pub hard: usize,
    pub hard_by_method: BTreeMap<Method, usize>,
}

pub fn stats(records: &[SweepRecord]) -> ReportStats {
    let mut s = ReportStats {
        total: records.len(),
        ..Default::default()
    };
    for r in records {
        *s.by_method.entry(r.method).or_default() += 1;
        *s.by_status.entry(r.status.as_str()).or_default() += 1;
        if r.hard {
            s.hard += 1;
            *s.hard_by_method.entry(r.method).or_default() += 1;
        }
    }
    s
}

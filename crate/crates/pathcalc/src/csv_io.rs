//! CSV ingestion and export of market frames.
//!
//! Format: UTF-8, header row, decimal point '.', no thousands separators.
//! Columns are addressed by header name; the frame is built on the file's
//! native time grid (never resampled). Export writes 17 significant digits
//! so a round trip reproduces every value bit-for-bit.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::path::MarketFrame;

/// Column mapping for ingestion.
#[derive(Debug, Clone)]
pub struct CsvSpec {
    pub time_column: String,
    pub value_columns: Vec<String>,
    pub traded_count: usize,
}

fn parse_cell(raw: &str, row: usize, col: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| Error::ParseError(format!("row {row}, column '{col}': cannot parse '{raw}' as a number")))
}

/// Read a frame from CSV. Times must parse strictly increasing.
pub fn ingest_csv<R: Read>(source: R, spec: &CsvSpec) -> Result<MarketFrame> {
    if spec.value_columns.is_empty() {
        return Err(Error::BadParameter("no value columns requested".into()));
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| Error::ParseError(e.to_string()))?
        .clone();
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let time_idx = find(&spec.time_column)?;
    let value_idx: Vec<usize> = spec
        .value_columns
        .iter()
        .map(|n| find(n))
        .collect::<Result<_>>()?;

    let mut times = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); value_idx.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::ParseError(e.to_string()))?;
        let get = |idx: usize, name: &str| -> Result<f64> {
            let raw = record
                .get(idx)
                .ok_or_else(|| Error::ParseError(format!("row {row}: missing field {idx}")))?;
            parse_cell(raw, row, name)
        };
        times.push(get(time_idx, &spec.time_column)?);
        for (k, &idx) in value_idx.iter().enumerate() {
            columns[k].push(get(idx, &spec.value_columns[k])?);
        }
    }
    MarketFrame::new(times, columns, spec.traded_count)
}

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write a frame as CSV with the given column names.
pub fn export_csv<W: Write>(frame: &MarketFrame, names: &[&str], mut sink: W) -> Result<()> {
    if names.len() != frame.column_count() {
        return Err(Error::DimensionMismatch {
            expected: frame.column_count(),
            got: names.len(),
        });
    }
    let mut header = String::from("time");
    for n in names {
        header.push(',');
        header.push_str(n);
    }
    header.push('\n');
    sink.write_all(header.as_bytes())?;
    let cols: Vec<_> = (0..frame.column_count())
        .map(|j| frame.column(j).expect("column in range"))
        .collect();
    for (i, &t) in frame.times().iter().enumerate() {
        let mut line = format_f64(t);
        for c in &cols {
            line.push(',');
            line.push_str(&format_f64(c.values()[i]));
        }
        line.push('\n');
        sink.write_all(line.as_bytes())?;
    }
    Ok(())
}

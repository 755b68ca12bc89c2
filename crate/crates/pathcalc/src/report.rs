//! Deterministic report serialization.
//!
//! JSON output keeps struct-declaration key order and prints every float
//! with 17 significant digits, so identical inputs produce byte-identical
//! files and every value round-trips exactly. Path-valued results go to CSV.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::csv_io::format_f64;
use crate::error::{Error, Result};
use crate::path::SampledPath;

/// Compact JSON formatter that prints floats with 17 significant digits.
struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a report to JSON bytes (stable key order, 17-digit floats,
/// trailing newline).
pub fn to_json_bytes<T: Serialize>(report: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    report
        .serialize(&mut ser)
        .map_err(|e| Error::ParseError(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Write a serializable report to `path` as JSON. Fails with the underlying
/// io error when the destination is not writable.
pub fn write_report<T: Serialize>(report: &T, path: &Path, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => {
            let bytes = to_json_bytes(report)?;
            std::fs::write(path, bytes)?;
            Ok(())
        }
        ReportFormat::Csv => Err(Error::BadParameter(
            "CSV is for path-valued outputs; use write_path_csv".into(),
        )),
    }
}

/// Write one or more same-grid paths as a plot-ready CSV with named columns.
pub fn write_path_csv(paths: &[(&str, &SampledPath)], path: &Path) -> Result<()> {
    let Some((_, first)) = paths.first() else {
        return Err(Error::BadParameter("no columns to write".into()));
    };
    for (_, p) in paths {
        if !first.same_grid(p) {
            return Err(Error::DomainMismatch(
                "CSV columns must share one grid".into(),
            ));
        }
    }
    let mut out = String::from("time");
    for (name, _) in paths {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, &t) in first.times().iter().enumerate() {
        out.push_str(&format_f64(t));
        for (_, p) in paths {
            out.push(',');
            out.push_str(&format_f64(p.values()[i]));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

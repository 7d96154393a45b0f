//! CSV and JSON emission. Records are serialized once through `serde_json`;
//! CSV flattens nested objects into `parent_child` columns and writes
//! `null` as an empty cell.

use std::io::Write;

use clap::ValueEnum;
use lwik::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Complex numbers as `{"re": …, "im": …}`; non-finite parts become `null`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

impl C {
    pub const MISSING: C = C { re: f64::NAN, im: f64::NAN };
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}_{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(|i| match i {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            }).collect();
            out.push((prefix.to_string(), cells.join(" ")));
        }
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn to_value<T: Serialize>(record: &T) -> std::io::Result<Value> {
    serde_json::to_value(record).map_err(std::io::Error::from)
}

/// Writes a homogeneous table: a CSV with one header line, or a JSON array.
pub fn table<T: Serialize>(out: &mut impl Write, format: Format, rows: &[T]) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(std::io::Error::from)?;
            writeln!(out)
        }
        Format::Csv => {
            // Buffered so that write errors on `out` keep their kind.
            let mut w = csv::Writer::from_writer(Vec::new());
            for (i, row) in rows.iter().enumerate() {
                let mut cells = Vec::new();
                flatten("", &to_value(row)?, &mut cells);
                if i == 0 {
                    w.write_record(cells.iter().map(|(k, _)| k))?;
                }
                w.write_record(cells.iter().map(|(_, v)| v))?;
            }
            let buf = w.into_inner().map_err(|e| e.into_error())?;
            out.write_all(&buf)
        }
    }
}

/// Writes a single JSON object, or its top-level fields as one CSV row.
pub fn record<T: Serialize>(out: &mut impl Write, format: Format, rec: &T) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rec).map_err(std::io::Error::from)?;
            writeln!(out)
        }
        Format::Csv => table(out, format, std::slice::from_ref(rec)),
    }
}

/// Writes several named tables: JSON as one object keyed by name, CSV as
/// consecutive tables separated by a blank line.
pub fn sections(out: &mut impl Write, format: Format, parts: &[(&str, Value)]) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let obj: Map<String, Value> = parts.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            serde_json::to_writer_pretty(&mut *out, &obj).map_err(std::io::Error::from)?;
            writeln!(out)
        }
        Format::Csv => {
            for (i, (_, v)) in parts.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                match v {
                    Value::Array(rows) => table(out, format, rows)?,
                    other => table(out, format, std::slice::from_ref(other))?,
                }
            }
            Ok(())
        }
    }
}

//! Tabular output in plain, CSV and JSON-lines form.
//!
//! Plain output is tab-separated with no header and prints floats in their
//! shortest round-trip form. CSV carries a header row; CSV and JSON print
//! floats with 17 significant digits.

use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Named coordinates; a nested object in JSON, `a=1;b=2` elsewhere.
    Point(Vec<(&'static str, f64)>),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Float with 17 significant digits, enough to round-trip any `f64`.
pub fn full_precision(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn point_text(point: &[(&'static str, f64)], num: fn(f64) -> String) -> String {
    point.iter().map(|(name, v)| format!("{name}={}", num(*v))).collect::<Vec<_>>().join(";")
}

/// Shortest round-trip digits; very small or large magnitudes switch to
/// exponent form so they stay readable.
fn shortest(v: f64) -> String {
    let a = v.abs();
    if v.is_finite() && a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn text(cell: &Cell, num: fn(f64) -> String) -> String {
    match cell {
        Cell::Num(v) => num(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Point(p) => point_text(p, num),
    }
}

fn json_number(v: f64) -> String {
    if v.is_finite() {
        full_precision(v)
    } else {
        "null".to_string()
    }
}

fn json_value(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => json_number(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) => serde_json::Value::String(s.clone()).to_string(),
        Cell::Point(p) => {
            let fields: Vec<String> = p
                .iter()
                .map(|(name, v)| format!("{}:{}", serde_json::Value::String((*name).into()), json_number(*v)))
                .collect();
            format!("{{{}}}", fields.join(","))
        }
    }
}

/// Unwraps the underlying IO error so callers can recognise a closed pipe.
fn csv_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

/// Streams rows in one format. CSV writes its header with the first call.
pub struct TableWriter<W: Write> {
    format: Format,
    columns: Vec<&'static str>,
    out: Option<W>,
    csv: Option<csv::Writer<W>>,
}

impl<W: Write> TableWriter<W> {
    pub fn new(format: Format, columns: &[&'static str], out: W) -> io::Result<Self> {
        let columns = columns.to_vec();
        if format == Format::Csv {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(&columns).map_err(csv_io)?;
            return Ok(Self { format, columns, out: None, csv: Some(csv) });
        }
        Ok(Self { format, columns, out: Some(out), csv: None })
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        debug_assert_eq!(cells.len(), self.columns.len());
        match self.format {
            Format::Csv => {
                let record: Vec<String> = cells.iter().map(|c| text(c, full_precision)).collect();
                self.csv.as_mut().expect("csv writer").write_record(&record).map_err(csv_io)?;
            }
            Format::Plain => {
                let fields: Vec<String> = cells.iter().map(|c| text(c, shortest)).collect();
                writeln!(self.out.as_mut().expect("writer"), "{}", fields.join("\t"))?;
            }
            Format::Json => {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(name, c)| format!("{}:{}", serde_json::Value::String((*name).into()), json_value(c)))
                    .collect();
                writeln!(self.out.as_mut().expect("writer"), "{{{}}}", fields.join(","))?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> io::Result<()> {
        if let Some(csv) = self.csv {
            csv.into_inner().map_err(|e| e.into_error())?.flush()
        } else if let Some(mut out) = self.out {
            out.flush()
        } else {
            Ok(())
        }
    }
}

//! Table emission as CSV or JSON with a provenance header.
//!
//! CSV: comma-separated, '.' decimal, a header row, and '#' comment lines
//! before it carrying the tool version, command, resolved config, seed, notes
//! and, last, the wall-clock timestamp. Floats are written in their shortest
//! round-trip form, so parsing a cell recovers the computed value exactly.

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

pub const TOOL: &str = concat!("dualdelay ", env!("CARGO_PKG_VERSION"));

/// Prefix of the one header line that differs between otherwise identical runs.
pub const TIMESTAMP_KEY: &str = "timestamp_unix";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    U(u64),
    B(bool),
    S(String),
    /// Value not available, e.g. an exact tail above the summation limit.
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::U(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::U(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_owned())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::F)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub table: Table,
    pub notes: Vec<String>,
}

/// Shortest round-trip text; exponent form outside the range where plain
/// decimals stay short.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v == 0.0 || (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::F(v) => format_f64(*v),
        Cell::U(v) => v.to_string(),
        Cell::B(v) => v.to_string(),
        Cell::S(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::S(s) => s.clone(),
        Cell::Null => String::new(),
    }
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::F(v) if v.is_finite() => json!(v),
        Cell::F(_) | Cell::Null => Value::Null,
        Cell::U(v) => json!(v),
        Cell::B(v) => json!(v),
        Cell::S(s) => json!(s),
    }
}

pub fn render(
    report: &Report,
    config: &RunConfig,
    base_seed: u64,
    format: Format,
    timestamp: u64,
) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&format!("# tool: {TOOL}\n"));
            out.push_str(&format!("# command: {}\n", report.command));
            out.push_str(&format!("# config: {}\n", config.to_json_line()));
            out.push_str(&format!("# base_seed: {base_seed}\n"));
            for note in &report.notes {
                out.push_str(&format!("# note: {note}\n"));
            }
            out.push_str(&format!("# {TIMESTAMP_KEY}: {timestamp}\n"));
            out.push_str(&report.table.columns.join(","));
            out.push('\n');
            for row in &report.table.rows {
                let fields: Vec<String> = row.iter().map(csv_field).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .table
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(json_value).collect()))
                .collect();
            let doc = json!({
                "tool": TOOL,
                "command": report.command,
                "config": config,
                "base_seed": base_seed,
                "notes": report.notes,
                "timestamp_unix": timestamp,
                "columns": report.table.columns,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

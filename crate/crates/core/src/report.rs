//! Deterministic report emission.
//!
//! Reports are the product of this crate, so their bytes must be stable:
//! fixed field order, floats always printed with 17 significant digits, CSV
//! per RFC 4180 (CRLF, quoting only where needed). Non-finite floats are
//! emitted as quoted strings in JSON, since JSON numbers cannot carry them.

use std::fmt::Write as _;

/// 17 significant digits: enough to round-trip any f64, same bytes per value.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    format!("{v:.16e}")
}

/// One value cell in a report row.
#[derive(Debug, Clone)]
pub enum Cell {
    Str(String),
    Float(f64),
    Int(i64),
    Bool(bool),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// A flat table: ordered column names plus rows of cells.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// JSON: array of flat objects in column order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            for (j, (col, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: ", json_string(col));
                out.push_str(&json_cell(cell));
            }
            out.push('}');
        }
        out.push_str("\n]\n");
        out
    }

    /// RFC 4180 CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push_str("\r\n");
        for row in &self.rows {
            let line = row.iter().map(csv_cell).collect::<Vec<_>>().join(",");
            out.push_str(&line);
            out.push_str("\r\n");
        }
        out
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_cell(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => json_string(s),
        Cell::Float(v) => {
            if v.is_finite() {
                fmt_f64(*v)
            } else {
                json_string(&fmt_f64(*v))
            }
        }
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => csv_field(s),
        Cell::Float(v) => fmt_f64(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
    }
}

/// A single verification outcome, the flat unit every suite reports in.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub check_id: String,
    pub value: f64,
    pub contract: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(check_id: impl Into<String>, value: f64, contract: impl Into<String>, pass: bool) -> Self {
        CheckRecord { check_id: check_id.into(), value, contract: contract.into(), pass }
    }
}

pub fn checks_to_table(checks: &[CheckRecord]) -> Table {
    let mut t = Table::new(&["check_id", "value", "contract", "pass"]);
    for c in checks {
        t.push(vec![
            Cell::Str(c.check_id.clone()),
            Cell::Float(c.value),
            Cell::Str(c.contract.clone()),
            Cell::Bool(c.pass),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        // round-trips
        let v: f64 = 0.497_120_778_188_314_1;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn deterministic_bytes() {
        let build = || {
            let mut t = Table::new(&["id", "x", "ok"]);
            t.push(vec!["a".into(), 1.5f64.into(), true.into()]);
            t.push(vec!["b,with comma".into(), f64::NEG_INFINITY.into(), false.into()]);
            (t.to_json(), t.to_csv())
        };
        let (j1, c1) = build();
        let (j2, c2) = build();
        assert_eq!(j1, j2);
        assert_eq!(c1, c2);
        assert!(c1.contains("\"b,with comma\""));
        assert!(c1.ends_with("\r\n"));
        assert!(j1.contains("\"-inf\""));
    }
}

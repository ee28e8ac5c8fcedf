//! Result tables and their CSV / JSON serializations.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Complex(Complex64),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Complex64> for Cell {
    fn from(v: Complex64) -> Self {
        Cell::Complex(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Int,
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<(String, ColumnKind)>,
    rows: Vec<Vec<Cell>>,
    meta: Value,
}

impl ResultTable {
    pub fn new(columns: &[(&str, ColumnKind)], meta: Value) -> Self {
        Self {
            columns: columns.iter().map(|&(n, k)| (n.to_string(), k)).collect(),
            rows: Vec::new(),
            meta,
        }
    }

    /// Appends a row; panics if its shape does not match the columns.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the column count");
        for (cell, (name, kind)) in row.iter().zip(&self.columns) {
            let ok = matches!(
                (cell, kind),
                (Cell::Int(_), ColumnKind::Int) | (Cell::Real(_), ColumnKind::Real) | (Cell::Complex(_), ColumnKind::Complex)
            );
            assert!(ok, "cell type does not match column '{name}'");
        }
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<Cell>>) {
        for r in rows {
            self.push(r);
        }
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn meta(&self) -> &Value {
        &self.meta
    }

    /// Flat column names; complex columns split into `_re` and `_im`.
    pub fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, kind) in &self.columns {
            match kind {
                ColumnKind::Complex => {
                    out.push(format!("{name}_re"));
                    out.push(format!("{name}_im"));
                }
                _ => out.push(name.clone()),
            }
        }
        out
    }

    /// Index of a flat column name.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header().iter().position(|c| c == name)
    }

    /// Row values flattened to `f64`, complex cells contributing two entries.
    pub fn flat_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut out = Vec::new();
                for c in r {
                    match *c {
                        Cell::Int(v) => out.push(v as f64),
                        Cell::Real(v) => out.push(v),
                        Cell::Complex(z) => {
                            out.push(z.re);
                            out.push(z.im);
                        }
                    }
                }
                out
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header().join(",");
        s.push('\n');
        for r in &self.rows {
            let mut fields = Vec::new();
            for c in r {
                match *c {
                    Cell::Int(v) => fields.push(v.to_string()),
                    Cell::Real(v) => fields.push(sci(v)),
                    Cell::Complex(z) => {
                        fields.push(sci(z.re));
                        fields.push(sci(z.im));
                    }
                }
            }
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut vals = Vec::new();
                for c in r {
                    match *c {
                        Cell::Int(v) => vals.push(json!(v)),
                        Cell::Real(v) => vals.push(json!(v)),
                        Cell::Complex(z) => {
                            vals.push(json!(z.re));
                            vals.push(json!(z.im));
                        }
                    }
                }
                Value::Array(vals)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), self.meta.clone());
        top.insert("columns".into(), json!(self.header()));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    /// Writes to `path`, or to standard output when `path` is `None`.
    pub fn export(&self, json: bool, path: Option<&Path>) -> CliResult<()> {
        let text = if json { self.to_json() } else { self.to_csv() };
        match path {
            Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            }),
            None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
        }
    }
}

/// C-style `%.12e`: twelve mantissa digits and an exponent of at least two
/// digits with explicit sign.
pub fn sci(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent formatting always contains 'e'");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

//! Tables written as CSV or JSON.

use std::io::Write;

use compdist::distribution::format_significant;
use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Format {
    pub json: bool,
    pub digits: usize,
}

impl Default for Format {
    fn default() -> Self {
        Format {
            json: false,
            digits: 7,
        }
    }
}

impl Format {
    fn text(&self, c: &Cell) -> String {
        match c {
            Cell::Num(v) => format_significant(*v, self.digits),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json_value(&self, c: &Cell) -> Value {
        match c {
            Cell::Num(v) => {
                let rounded: f64 = format_significant(*v, self.digits).parse().unwrap_or(*v);
                Number::from_f64(rounded).map_or_else(|| Value::String(self.text(c)), Value::Number)
            }
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    pub fn write_table(&self, out: &mut dyn Write, t: &Table) -> Result<(), CliError> {
        if self.json {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = t
                        .header
                        .iter()
                        .cloned()
                        .zip(r.iter().map(|c| self.json_value(c)))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        } else {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&t.header)?;
            for r in &t.rows {
                w.write_record(r.iter().map(|c| self.text(c)))?;
            }
            w.flush()?;
        }
        Ok(())
    }
}

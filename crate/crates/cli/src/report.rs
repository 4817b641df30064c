//! Flat result records rendered as CSV or JSON.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => i64::try_from(*v)
                .map(Value::from)
                .unwrap_or_else(|_| Value::String(v.to_string())),
            Cell::Float(v) => Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
int_cell!(u32, u64, usize, u128, i64);

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// One row: ordered `(column, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Cell)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Cell>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        let key = key.into();
        let value = value.into();
        match self.fields.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn fields(&self) -> &[(String, Cell)] {
        &self.fields
    }

    /// `false` only when the record carries `pass = false`.
    pub fn passed(&self) -> bool {
        !matches!(self.get("pass"), Some(Cell::Bool(false)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for r in &self.records {
            for (k, _) in &r.fields {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
        cols
    }

    /// Header row plus one row per record; missing cells are empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let cols = self.columns();
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&cols)?;
        for r in &self.records {
            w.write_record(
                cols.iter()
                    .map(|c| r.get(c).map(Cell::to_csv).unwrap_or_default()),
            )?;
        }
        w.flush()?;
        Ok(())
    }

    /// Array of flat objects sharing the same keys.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        let cols = self.columns();
        let rows: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = cols
                    .iter()
                    .map(|c| (c.clone(), r.get(c).map_or(Value::Null, Cell::to_json)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(String::from_utf8(buf).expect("reports are UTF-8"))
    }
}

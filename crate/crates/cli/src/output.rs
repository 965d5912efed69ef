//! Tables and their CSV / JSON renderings. Both renderings are built from
//! the same cells, so they carry identical numbers.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, header: &[(String, String)], w: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in header {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// What a command produces: a main table and, optionally, sampled wavefunctions.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Table,
    pub wavefunctions: Option<Table>,
    /// Extra `key=value` lines for the CSV header.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(rows: Table) -> Self {
        Self {
            rows,
            wavefunctions: None,
            notes: Vec::new(),
        }
    }
}

pub fn json_document(config: &RunConfig, report: &Report) -> Value {
    let mut doc = Map::new();
    doc.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
    if !report.notes.is_empty() {
        let notes: Map<String, Value> = report.notes.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect();
        doc.insert("notes".into(), Value::Object(notes));
    }
    doc.insert("rows".into(), report.rows.to_json());
    if let Some(w) = &report.wavefunctions {
        doc.insert("wavefunctions".into(), w.to_json());
    }
    Value::Object(doc)
}

/// Path of the wavefunction table next to a CSV output file.
pub fn wavefunction_path(out: &std::path::Path) -> std::path::PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = out.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
    out.with_file_name(format!("{stem}_wavefunctions.{ext}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["E_MeV", "n"]);
        t.push(vec![Cell::Num(0.1), Cell::Int(3)]);
        t.push(vec![Cell::Empty, Cell::Bool(true)]);
        let mut buf = Vec::new();
        t.write_csv(&[("V0_MeV".into(), "100".into())], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "# V0_MeV=100\nE_MeV,n\n1.0000000000000001e-1,3\n,true\n");
    }

    #[test]
    fn csv_and_json_carry_the_same_number() {
        let v = 2.0f64.sqrt() * 1e-7;
        let text = Cell::Num(v).csv();
        let back: f64 = text.parse().unwrap();
        assert_eq!(back, v);
        assert_eq!(Cell::Num(v).json().as_f64(), Some(v));
        assert_eq!(Cell::Num(f64::NAN).json(), Value::Null);
    }

    #[test]
    fn sibling_path() {
        let p = wavefunction_path(std::path::Path::new("/tmp/out/bound.csv"));
        assert_eq!(p, std::path::PathBuf::from("/tmp/out/bound_wavefunctions.csv"));
    }
}

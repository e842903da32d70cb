use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Ordered key/value rows. One row renders as a record, several as a table.
#[derive(Debug, Clone, Default)]
pub struct Report {
    rows: Vec<Vec<(String, Value)>>,
}

impl Report {
    pub fn row() -> Self {
        Report { rows: vec![Vec::new()] }
    }

    pub fn put(mut self, key: &str, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).expect("serializable value");
        self.rows.last_mut().expect("at least one row").push((key.to_string(), value));
        self
    }

    /// Appends the fields of `other`'s single row to this row.
    pub fn merge(mut self, other: Report) -> Self {
        for row in other.rows {
            self.rows.last_mut().expect("at least one row").extend(row);
        }
        self
    }

    pub fn push_row(&mut self, row: Report) {
        self.rows.extend(row.rows);
    }

    pub fn to_json(&self) -> Value {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(r.iter().cloned().collect::<Map<_, _>>()))
            .collect();
        match <[Value; 1]>::try_from(objects) {
            Ok([single]) => single,
            Err(many) => Value::Array(many),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Human if self.rows.len() == 1 => {
                let width = self.rows[0].iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in &self.rows[0] {
                    let _ = writeln!(s, "{k:width$}  {}", text(v));
                }
                s
            }
            Format::Human => self.table(),
        }
    }

    fn columns(&self) -> Vec<&str> {
        let mut cols: Vec<&str> = Vec::new();
        for (k, _) in self.rows.iter().flatten() {
            if !cols.contains(&k.as_str()) {
                cols.push(k);
            }
        }
        cols
    }

    fn cells(&self) -> Vec<Vec<String>> {
        let cols = self.columns();
        self.rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| r.iter().find(|(k, _)| k == c).map_or(String::new(), |(_, v)| text(v)))
                    .collect()
            })
            .collect()
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns()).expect("in-memory csv");
        for row in self.cells() {
            w.write_record(&row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }

    fn table(&self) -> String {
        let cols = self.columns();
        let cells = self.cells();
        let widths: Vec<usize> = (0..cols.len())
            .map(|i| cells.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| {
            let mut s = String::new();
            for (i, item) in items.iter().enumerate() {
                let _ = write!(s, "{}{item:w$}", if i > 0 { "  " } else { "" }, w = widths[i]);
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(cols.clone());
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Serialize)]
pub struct RunRecord<'a> {
    pub command: &'a str,
    pub params: Value,
    pub version: &'a str,
    pub duration_ms: f64,
    pub result: Value,
}

pub fn append_record(path: &Path, record: &RunRecord) -> std::io::Result<()> {
    let mut line = serde_json::to_string(record).map_err(std::io::Error::other)?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(line.as_bytes())
}

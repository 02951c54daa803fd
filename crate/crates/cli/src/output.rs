//! Report rendering in the three output formats.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's result in every format.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// command-specific CSV; otherwise the JSON is flattened
    pub csv: Option<String>,
}

impl Report {
    pub fn new(text: impl Into<String>, data: &impl Serialize) -> Self {
        Report {
            text: text.into(),
            json: serde_json::to_value(data).expect("report serializes"),
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => with_newline(self.text.clone()),
            Format::Json => with_newline(serde_json::to_string_pretty(&self.json).expect("json")),
            Format::Csv => match &self.csv {
                Some(c) => with_newline(c.clone()),
                None => flatten_csv(&self.json),
            },
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// Arrays of objects become one row per element, a lone object one row;
/// nested values are written as compact JSON.
pub fn flatten_csv(v: &Value) -> String {
    let rows: Vec<&Value> = match v {
        Value::Array(a) => a.iter().collect(),
        other => vec![other],
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => vec!["value".into()],
    };
    w.write_record(&header).expect("csv");
    for r in rows {
        let record: Vec<String> = match r {
            Value::Object(m) => header.iter().map(|k| m.get(k).map_or(String::new(), cell)).collect(),
            other => vec![cell(other)],
        };
        w.write_record(&record).expect("csv");
    }
    String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
}

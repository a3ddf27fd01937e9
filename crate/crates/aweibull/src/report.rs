//! Tabular reports written as CSV or JSON, and read back.
//!
//! CSV layout: `# key: value` metadata lines, one header row, then one row
//! per record. JSON layout: a single object
//! `{"metadata": {...}, "columns": [...], "records": [{column: value}, ...]}`.
//! Floats are written in shortest round-trip form, so reading a report back
//! reproduces every value bit for bit.

use std::fmt;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One cell.
#[derive(Clone, Debug)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Null, Value::Null) => true,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()),
            (Value::Text(a), Value::Text(b)) => a == b,
            _ => false,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Float)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Float(x) => Some(x),
            Value::Int(i) => Some(i as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    fn to_field(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Float(x) => format!("{x:?}"),
            Value::Text(s) => s.clone(),
        }
    }

    fn from_field(s: &str) -> Value {
        if s.is_empty() {
            return Value::Null;
        }
        match s {
            "true" => return Value::Bool(true),
            "false" => return Value::Bool(false),
            _ => {}
        }
        if let Ok(i) = s.parse::<i64>() {
            return Value::Int(i);
        }
        if let Some(x) = parse_float(s) {
            return Value::Float(x);
        }
        Value::Text(s.to_string())
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Null => serde_json::Value::Null,
            Value::Bool(b) => json!(b),
            Value::Int(i) => json!(i),
            Value::Float(x) if x.is_finite() => json!(x),
            Value::Float(x) => json!(format!("{x:?}")),
            Value::Text(s) => json!(s),
        }
    }

    fn from_json(v: &serde_json::Value) -> Value {
        match v {
            serde_json::Value::Null => Value::Null,
            serde_json::Value::Bool(b) => Value::Bool(*b),
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Value::Int(i),
                None => Value::Float(n.as_f64().unwrap_or(f64::NAN)),
            },
            serde_json::Value::String(s) => match s.as_str() {
                "inf" | "-inf" | "NaN" => Value::Float(parse_float(s).unwrap_or(f64::NAN)),
                _ => Value::Text(s.clone()),
            },
            other => Value::Text(other.to_string()),
        }
    }
}

// Accepts what `{:?}` prints for f64 and nothing looser.
fn parse_float(s: &str) -> Option<f64> {
    let looks_numeric = s
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'-' | b'+'));
    if looks_numeric || matches!(s, "inf" | "-inf" | "NaN") {
        s.parse().ok()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub law: String,
    /// `name=value` pairs joined by commas.
    pub params: String,
    pub seed: u64,
    pub version: String,
}

impl Metadata {
    pub fn new(command: &str, law: &str, params: String, seed: u64) -> Self {
        Metadata {
            command: command.to_string(),
            law: law.to_string(),
            params,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn pairs(&self) -> [(&'static str, String); 5] {
        [
            ("command", self.command.clone()),
            ("law", self.law.clone()),
            ("params", self.params.clone()),
            ("seed", self.seed.to_string()),
            ("version", self.version.clone()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub records: Vec<Vec<Value>>,
}

#[derive(Debug)]
pub enum ReportError {
    Csv(csv::Error),
    Json(serde_json::Error),
    Io(io::Error),
    Malformed(String),
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::Csv(e) => write!(f, "csv: {e}"),
            ReportError::Json(e) => write!(f, "json: {e}"),
            ReportError::Io(e) => write!(f, "io: {e}"),
            ReportError::Malformed(m) => write!(f, "malformed report: {m}"),
        }
    }
}

impl std::error::Error for ReportError {}

impl From<csv::Error> for ReportError {
    fn from(e: csv::Error) -> Self {
        ReportError::Csv(e)
    }
}

impl From<serde_json::Error> for ReportError {
    fn from(e: serde_json::Error) -> Self {
        ReportError::Json(e)
    }
}

impl From<io::Error> for ReportError {
    fn from(e: io::Error) -> Self {
        ReportError::Io(e)
    }
}

impl Report {
    pub fn new(metadata: Metadata, columns: &[&str]) -> Self {
        Report {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            records: Vec::new(),
        }
    }

    /// Appends a record; it must have one value per column.
    pub fn push(&mut self, record: Vec<Value>) {
        assert_eq!(record.len(), self.columns.len(), "record width");
        self.records.push(record);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, ReportError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn parse(format: Format, bytes: &[u8]) -> Result<Report, ReportError> {
        match format {
            Format::Csv => Report::from_csv(bytes),
            Format::Json => Report::from_json(bytes),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, ReportError> {
        let mut out = Vec::new();
        for (k, v) in self.metadata.pairs() {
            out.extend_from_slice(format!("# {k}: {v}\n").as_bytes());
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.records {
            w.write_record(r.iter().map(Value::to_field))?;
        }
        w.into_inner().map_err(|e| ReportError::Io(e.into_error()))
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Report, ReportError> {
        let text = std::str::from_utf8(bytes).map_err(|e| ReportError::Malformed(e.to_string()))?;
        let mut meta = Map::new();
        let mut body = text;
        while let Some(line) = body.strip_prefix("# ") {
            let (line, rest) = line.split_once('\n').unwrap_or((line, ""));
            let (k, v) = line
                .split_once(": ")
                .ok_or_else(|| ReportError::Malformed(format!("metadata line {line:?}")))?;
            meta.insert(k.to_string(), json!(v));
            body = rest;
        }
        let seed = meta
            .get("seed")
            .and_then(|s| s.as_str())
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| ReportError::Malformed("missing seed".into()))?;
        meta.insert("seed".into(), json!(seed));
        let metadata: Metadata = serde_json::from_value(serde_json::Value::Object(meta))?;

        let mut r = csv::Reader::from_reader(body.as_bytes());
        let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let mut records = Vec::new();
        for row in r.records() {
            let row = row?;
            if row.len() != columns.len() {
                return Err(ReportError::Malformed("ragged row".into()));
            }
            records.push(row.iter().map(Value::from_field).collect());
        }
        Ok(Report {
            metadata,
            columns,
            records,
        })
    }

    pub fn to_json(&self) -> Result<Vec<u8>, ReportError> {
        let records: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|r| {
                let obj: Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(Value::to_json))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "metadata": self.metadata,
            "columns": self.columns,
            "records": records,
        });
        let mut out = serde_json::to_vec_pretty(&doc)?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Report, ReportError> {
        #[derive(Deserialize)]
        struct Doc {
            metadata: Metadata,
            columns: Vec<String>,
            records: Vec<Map<String, serde_json::Value>>,
        }
        let doc: Doc = serde_json::from_slice(bytes)?;
        let mut records = Vec::with_capacity(doc.records.len());
        for obj in &doc.records {
            let row = doc
                .columns
                .iter()
                .map(|c| {
                    obj.get(c)
                        .map(Value::from_json)
                        .ok_or_else(|| ReportError::Malformed(format!("record lacks {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            records.push(row);
        }
        Ok(Report {
            metadata: doc.metadata,
            columns: doc.columns,
            records,
        })
    }
}

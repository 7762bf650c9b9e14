//! Machine-readable command reports.
//!
//! A report is a small table (`columns` + `results` rows) with a config echo
//! and a key/value summary. JSON output is versioned by a top-level
//! `"schema"` field. CSV output puts everything except the table into
//! leading `# key: value` lines so that [`Report::from_csv`] can read it back.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }

    /// Floats always print with a `.`, an exponent, `NaN` or `inf`, so they
    /// never collide with integers. Text that would read back as another kind
    /// of cell gets a leading `'`.
    fn encode(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:?}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
            Cell::Text(s) => {
                let ambiguous = s.is_empty()
                    || s.starts_with('\'')
                    || s == "true"
                    || s == "false"
                    || s.parse::<f64>().is_ok();
                if ambiguous {
                    format!("'{s}")
                } else {
                    s.clone()
                }
            }
        }
    }

    fn decode(s: &str) -> Cell {
        if s.is_empty() {
            return Cell::Empty;
        }
        if let Some(rest) = s.strip_prefix('\'') {
            return Cell::Text(rest.to_string());
        }
        match s {
            "true" => return Cell::Bool(true),
            "false" => return Cell::Bool(false),
            _ => {}
        }
        if let Ok(v) = s.parse::<i64>() {
            return Cell::Int(v);
        }
        match s.parse::<f64>() {
            Ok(v) => Cell::Num(v),
            Err(_) => Cell::Text(s.to_string()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
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

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigEcho {
    pub n: Option<usize>,
    pub m: Option<i64>,
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub columns: Vec<String>,
    pub results: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    pub max_residual: Option<f64>,
    pub pass: bool,
    /// Seconds since the Unix epoch. Left out of deterministic runs.
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(command: &str, config: ConfigEcho, columns: Vec<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            columns,
            results: Vec::new(),
            summary: Vec::new(),
            max_residual: None,
            pass: true,
            timestamp: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.results.push(row);
    }

    pub fn add_summary(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn summary_value(&self, key: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.results.iter().map(|r| &r[idx]).collect())
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("schema".into(), Value::from(self.schema));
        root.insert("command".into(), Value::from(self.command.clone()));

        let c = &self.config;
        let mut config = Map::new();
        config.insert("n".into(), c.n.map_or(Value::Null, Value::from));
        config.insert("m".into(), c.m.map_or(Value::Null, Value::from));
        config.insert("seed".into(), Value::from(c.seed));
        config.insert("tol".into(), Value::from(c.tol));
        config.insert("samples".into(), Value::from(c.samples));
        config.insert("format".into(), Value::from(c.format.as_str()));
        root.insert("config".into(), Value::Object(config));

        root.insert("columns".into(), self.columns.iter().map(|s| Value::from(s.as_str())).collect());
        let rows = self
            .results
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                Value::Object(obj)
            })
            .collect();
        root.insert("results".into(), Value::Array(rows));

        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        root.insert("summary".into(), Value::Object(summary));
        root.insert("max_residual".into(), self.max_residual.map_or(Value::Null, Value::from));
        root.insert("pass".into(), Value::Bool(self.pass));
        if let Some(ts) = self.timestamp {
            root.insert("timestamp".into(), Value::from(ts));
        }
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: &str| {
            out.push_str("# ");
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&escape_line(value));
            out.push('\n');
        };
        let opt = |v: Option<String>| v.unwrap_or_default();
        let c = &self.config;
        line("schema", &self.schema.to_string());
        line("command", &self.command);
        line("n", &opt(c.n.map(|v| v.to_string())));
        line("m", &opt(c.m.map(|v| v.to_string())));
        line("seed", &c.seed.to_string());
        line("tol", &format!("{:?}", c.tol));
        line("samples", &c.samples.to_string());
        line("format", c.format.as_str());
        for (k, v) in &self.summary {
            line(&format!("summary.{k}"), &v.encode());
        }
        line("max_residual", &opt(self.max_residual.map(|v| format!("{v:?}"))));
        line("pass", &self.pass.to_string());
        if let Some(ts) = self.timestamp {
            line("timestamp", &ts.to_string());
        }

        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.results {
            w.write_record(row.iter().map(Cell::encode)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("flush to Vec")).expect("utf-8 input"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Report> {
        let bad = |msg: String| Error::InvalidArgument(format!("malformed report: {msg}"));
        let mut meta: Vec<(String, String)> = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(rest) = line.strip_prefix("# ") else { break };
            body_start += line.len();
            let rest = rest.strip_suffix('\n').unwrap_or(rest);
            let (k, v) = rest.split_once(": ").ok_or_else(|| bad(format!("header line '{rest}'")))?;
            meta.push((k.to_string(), unescape_line(v)));
        }

        let mut take = |key: &str| -> Result<String> {
            let idx = meta.iter().position(|(k, _)| k == key).ok_or_else(|| bad(format!("missing '{key}'")))?;
            Ok(meta.remove(idx).1)
        };
        fn field<T: FromStr>(s: &str, key: &str) -> Result<T> {
            s.parse().map_err(|_| Error::InvalidArgument(format!("malformed report: bad value for '{key}': '{s}'")))
        }
        fn opt_field<T: FromStr>(s: &str, key: &str) -> Result<Option<T>> {
            if s.is_empty() {
                Ok(None)
            } else {
                field(s, key).map(Some)
            }
        }

        let schema = field(&take("schema")?, "schema")?;
        let command = take("command")?;
        let n = opt_field(&take("n")?, "n")?;
        let m = opt_field(&take("m")?, "m")?;
        let seed = field(&take("seed")?, "seed")?;
        let tol = field(&take("tol")?, "tol")?;
        let samples = field(&take("samples")?, "samples")?;
        let format: Format = take("format")?.parse()?;
        let max_residual = opt_field(&take("max_residual")?, "max_residual")?;
        let pass = field(&take("pass")?, "pass")?;
        let timestamp = match take("timestamp") {
            Ok(s) => Some(field(&s, "timestamp")?),
            Err(_) => None,
        };
        let mut summary = Vec::new();
        for (k, v) in meta {
            let key = k.strip_prefix("summary.").ok_or_else(|| bad(format!("unknown key '{k}'")))?;
            summary.push((key.to_string(), Cell::decode(&v)));
        }

        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(&text.as_bytes()[body_start..]);
        let mut records = r.records();
        let columns: Vec<String> = match records.next() {
            Some(rec) => rec.map_err(|e| bad(e.to_string()))?.iter().map(str::to_string).collect(),
            None => Vec::new(),
        };
        let mut results = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            results.push(rec.iter().map(Cell::decode).collect());
        }

        Ok(Report {
            schema,
            command,
            config: ConfigEcho { n, m, seed, tol, samples, format },
            columns,
            results,
            summary,
            max_residual,
            pass,
            timestamp,
        })
    }
}

fn escape_line(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n").replace('\r', "\\r")
}

fn unescape_line(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let config = ConfigEcho { n: Some(4), m: None, seed: 42, tol: 1e-10, samples: 40, format: Format::Csv };
        let mut r = Report::new("verify", config, vec!["x".into(), "label".into(), "ok".into(), "gap".into()]);
        r.push_row(vec![Cell::Num(0.5), Cell::text("exp(x)"), Cell::Bool(true), Cell::Empty]);
        r.push_row(vec![Cell::Num(-1e-300), Cell::text("1.5"), Cell::Bool(false), Cell::Num(3.0)]);
        r.push_row(vec![Cell::Num(2.0), Cell::text("a, \"b\"\nc"), Cell::text(""), Cell::text("'q")]);
        r.add_summary("classification", "exact-solution");
        r.add_summary("d", 1usize);
        r.add_summary("ratio", 1.0);
        r.add_summary("neg", -7i64);
        r.add_summary("note", "line\\one\ntwo");
        r.max_residual = Some(1.25e-12);
        r.pass = false;
        r.timestamp = Some(1_700_000_000);
        r
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        let text = r.to_csv();
        assert!(text.starts_with("# schema: 1\n# command: verify\n"));
        assert_eq!(Report::from_csv(&text).unwrap(), r);
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json_value();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["config"]["seed"], 42);
        assert!(v["config"]["m"].is_null());
        assert_eq!(v["results"][0]["label"], "exp(x)");
        assert_eq!(v["summary"]["classification"], "exact-solution");
        assert_eq!(v["pass"], false);
        assert_eq!(v["timestamp"], 1_700_000_000u64);
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys[..3], ["schema", "command", "config"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Report::from_csv("x,y\n1,2\n").is_err());
        assert!(Report::from_csv("# schema 1\n").is_err());
    }
}

//! Output plumbing: every artifact starts with the resolved configuration.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Ordered `key = value` pairs describing a run.
#[derive(Clone, Debug, Default)]
pub struct Header {
    entries: Vec<(String, Value)>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        let mut h = Header::default();
        h.push("command", command);
        h.push("version", env!("CARGO_PKG_VERSION"));
        h
    }

    pub fn push(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("header values serialize");
        self.entries.push((key.to_string(), v));
    }

    fn flat(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => "none".into(),
            other => other.to_string(),
        }
    }

    pub fn csv_comment(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("# {k} = {}\n", Self::flat(v))).collect()
    }

    pub fn svg_comment(&self) -> String {
        let body: String = self.entries.iter().map(|(k, v)| format!("  {k} = {}\n", Self::flat(v).replace("--", "- -"))).collect();
        format!("<!--\n{body}-->\n")
    }

    pub fn json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.entries {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

/// `{"config": .., "result": ..}`, pretty-printed with a trailing newline.
pub fn json_doc(header: &Header, result: impl Serialize) -> Result<String> {
    let mut m = Map::new();
    m.insert("config".into(), header.json());
    m.insert("result".into(), serde_json::to_value(result)?);
    let mut s = serde_json::to_string_pretty(&Value::Object(m))?;
    s.push('\n');
    Ok(s)
}

/// Header comment followed by a CSV table.
pub fn csv_doc(header: &Header, columns: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(columns)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?;
    Ok(header.csv_comment() + &body)
}

pub fn svg_doc(header: &Header, svg: String) -> String {
    header.svg_comment() + &svg
}

/// Writes to `out`, or stdout when absent.
pub fn deliver(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
            Ok(())
        }
    }
}

//! Table reports: JSON with `meta` and `rows`, or CSV with a header row.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Value,
    pub rows: Vec<Value>,
}

impl Report {
    /// `meta` echoes the command and configuration; anything run-dependent
    /// (timings, counters) goes to stderr instead.
    pub fn new(command: &str, cfg: &RunConfig, extra: Value, rows: Vec<Value>) -> Result<Self, CliError> {
        let mut meta = json!({
            "command": command,
            "config": serde_json::to_value(cfg)?,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
            m.extend(e);
        }
        Ok(Self { meta, rows })
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => to_csv(&self.rows),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        _ => v.to_string(),
    }
}

pub fn to_csv(rows: &[Value]) -> Result<String, CliError> {
    let mut columns = BTreeSet::new();
    for r in rows {
        if let Value::Object(m) = r {
            columns.extend(m.keys().cloned());
        }
    }
    let columns: Vec<String> = columns.into_iter().collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Failure(e.to_string());
    w.write_record(&columns).map_err(io)?;
    for r in rows {
        let record: Vec<String> = columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect();
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}

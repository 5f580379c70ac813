//! Summaries of a result store.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use super::store::StoreEntry;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            _ => Err(Error::Parse(format!("unknown report format '{s}' (md or json)"))),
        }
    }
}

fn checks_of(e: &StoreEntry) -> Vec<&Value> {
    e.result.get("checks").and_then(Value::as_array).map(|c| c.iter().collect()).unwrap_or_default()
}

fn cell(v: Option<&Value>) -> String {
    match v {
        Some(Value::Number(n)) => n.as_f64().map_or_else(|| n.to_string(), |x| format!("{x:.6e}")),
        Some(Value::Null) | None => "-".into(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

pub fn render(entries: &[StoreEntry], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    let checks = checks_of(e);
                    json!({
                        "key": e.key,
                        "kind": e.kind,
                        "inputs": e.inputs,
                        "checks": checks,
                        "passed": checks.iter().filter(|c| c.get("pass") == Some(&Value::Bool(true))).count(),
                        "total": checks.len(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "entries": rows })).expect("report serializes")
        }
        ReportFormat::Markdown => {
            let mut s = format!("# Results\n\n{} entries\n", entries.len());
            for e in entries {
                let _ = write!(s, "\n## {} `{}`\n\ninputs: `{}`\n", e.kind, &e.key[..12.min(e.key.len())], e.inputs);
                let checks = checks_of(e);
                if checks.is_empty() {
                    if let Some(rows) = e.result.as_array() {
                        let _ = writeln!(s, "\n{} records", rows.len());
                    }
                    continue;
                }
                s.push_str("\n| check | pass | value | target | tol |\n|---|---|---|---|---|\n");
                for c in checks {
                    let pass = if c.get("pass") == Some(&Value::Bool(true)) { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "| {} | {pass} | {} | {} | {} |",
                        cell(c.get("name")),
                        cell(c.get("value")),
                        cell(c.get("target")),
                        cell(c.get("tol"))
                    );
                }
            }
            s
        }
    }
}

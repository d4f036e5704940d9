//! Content-addressed run records and their replay.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const RECORD_SCHEMA: u32 = 1;
pub const REPLAY_SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Keys that may differ between two runs of the same command.
const VOLATILE: [&str; 2] = ["elapsed_ms", "timestamp"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: u32,
    pub id: String,
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub config: Value,
    /// Path to hex SHA-256 of every file the command read.
    pub inputs: BTreeMap<String, String>,
    pub exit_code: i32,
    pub payload: Value,
    pub tool_version: String,
    pub timestamp: String,
    pub elapsed_ms: u64,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `value` with every volatile key removed, at any depth.
pub fn stable(value: &Value) -> Value {
    match value {
        Value::Object(map) => Value::Object(
            map.iter()
                .filter(|(k, _)| !VOLATILE.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), stable(v)))
                .collect(),
        ),
        Value::Array(items) => Value::Array(items.iter().map(stable).collect()),
        other => other.clone(),
    }
}

impl RunRecord {
    pub fn new(
        command: Vec<String>,
        config: Value,
        inputs: BTreeMap<String, String>,
        exit_code: i32,
        payload: Value,
        elapsed_ms: u64,
    ) -> RunRecord {
        let mut record = RunRecord {
            schema: RECORD_SCHEMA,
            id: String::new(),
            command,
            config,
            inputs,
            exit_code,
            payload,
            tool_version: TOOL_VERSION.into(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            elapsed_ms,
        };
        record.id = record.content_id();
        record
    }

    /// Hash of everything except the id, timestamps and timings.
    pub fn content_id(&self) -> String {
        let body = json!({
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "exit_code": self.exit_code,
            "payload": stable(&self.payload),
            "tool_version": self.tool_version,
        });
        digest(body.to_string().as_bytes())
    }

    pub fn persist(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let path = dir.join(format!("{}.json", self.id));
        let text = serde_json::to_string_pretty(self).expect("records serialize");
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<RunRecord> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| anyhow!(ordshadow::Error::Parse(format!("{}: {e}", path.display()))))
    }
}

/// JSON-pointer paths where `a` and `b` differ, ignoring volatile keys.
pub fn differences(a: &Value, b: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_into(&stable(a), &stable(b), String::new(), &mut out);
    out
}

fn diff_into(a: &Value, b: &Value, path: String, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let sub = format!("{path}/{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_into(u, v, sub, out),
                    _ => out.push(sub),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                diff_into(u, v, format!("{path}/{i}"), out);
            }
        }
        _ if a == b => {}
        _ => out.push(if path.is_empty() { "/".into() } else { path }),
    }
}

/// Comparison of a stored record against a fresh run.
pub fn replay_report(record: &RunRecord, fresh: &RunRecord, changed_inputs: Vec<String>) -> (i32, Value) {
    let differences = differences(&record.payload, &fresh.payload);
    let version_changed = record.tool_version != fresh.tool_version;
    let equal = differences.is_empty()
        && record.exit_code == fresh.exit_code
        && changed_inputs.is_empty()
        && !version_changed;
    let report = json!({
        "schema": REPLAY_SCHEMA,
        "report": "replay",
        "record": record.id,
        "command": record.command,
        "equal": equal,
        "exit_code": {"recorded": record.exit_code, "replayed": fresh.exit_code},
        "tool_version": {"recorded": record.tool_version, "current": fresh.tool_version, "changed": version_changed},
        "changed_inputs": changed_inputs,
        "differences": differences,
    });
    (if equal { 0 } else { 1 }, report)
}

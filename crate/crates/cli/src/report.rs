//! Report envelope, digests and the JSON and CSV renderings.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_digest: String,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub wall_time_ms: u64,
}

/// What every subcommand prints. `passed` is false when one of the
/// command's internal checks failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub passed: bool,
    pub result: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => to_csv(&serde_json::to_value(self).expect("reports serialize")),
        }
    }
}

/// Hex SHA-256 of `input` written with sorted keys and no whitespace.
pub fn digest(input: &Value) -> String {
    let mut text = String::new();
    write_canonical(input, &mut text);
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Arrays under these keys hold one basis state per element and become one
/// CSV row each.
const STATE_LISTS: [&str; 2] = ["basis", "states"];

fn to_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(&csv_field(&k));
        out.push(',');
        out.push_str(&csv_field(&v));
        out.push('\n');
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Value::Array(items) if items.is_empty() => rows.push((prefix.to_owned(), String::new())),
        Value::Array(items) => {
            let whole_rows = STATE_LISTS.iter().any(|s| prefix.rsplit('.').next() == Some(s));
            for (i, x) in items.iter().enumerate() {
                let key = format!("{prefix}[{i}]");
                if whole_rows {
                    rows.push((key, x.to_string()));
                } else {
                    flatten(&key, x, rows);
                }
            }
        }
        Value::String(s) => rows.push((prefix.to_owned(), s.clone())),
        Value::Null => rows.push((prefix.to_owned(), String::new())),
        scalar => rows.push((prefix.to_owned(), scalar.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

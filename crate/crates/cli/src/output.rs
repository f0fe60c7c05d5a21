use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::cli::Format;

/// Report envelope written for every subcommand except `report`.
pub fn envelope(argv: &[String], subcommand: &str, payload: Value, exit_status: i32) -> Value {
    json!({
        "command": argv[1..].join(" "),
        "subcommand": subcommand,
        "timestamp": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        "exit_status": exit_status,
        "payload": payload,
    })
}

pub fn emit(format: Format, argv: &[String], subcommand: &str, payload: Value, exit_status: i32) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &envelope(argv, subcommand, payload, exit_status))?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&mut out, &table(&[payload]))?,
        Format::Text => write_text(&mut out, &payload, 0)?,
    }
    Ok(())
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_text(out: &mut impl Write, v: &Value, indent: usize) -> Result<()> {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if val.is_object() || val.as_array().is_some_and(|a| a.iter().any(|x| x.is_object())) {
                    writeln!(out, "{pad}{k}:")?;
                    write_text(out, val, indent + 2)?;
                } else {
                    writeln!(out, "{pad}{k}: {}", scalar_text(val))?;
                }
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, item) in items.iter().enumerate() {
                writeln!(out, "{pad}[{i}]")?;
                write_text(out, item, indent + 2)?;
            }
        }
        other => writeln!(out, "{pad}{}", scalar_text(other))?,
    }
    Ok(())
}

/// Flattens payloads into rows: an array contributes one row per element,
/// anything else a single row. Nested values are kept as JSON text.
fn table(payloads: &[Value]) -> (Vec<String>, Vec<Map<String, Value>>) {
    let mut rows = Vec::new();
    for p in payloads {
        let items: Vec<&Value> = match p {
            Value::Array(items) => items.iter().collect(),
            other => vec![other],
        };
        for item in items {
            let row = match item {
                Value::Object(m) => m.clone(),
                other => Map::from_iter([("value".to_string(), other.clone())]),
            };
            rows.push(row);
        }
    }
    let mut columns: Vec<String> = Vec::new();
    for row in &rows {
        for k in row.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    (columns, rows)
}

fn write_csv(out: &mut impl Write, (columns, rows): &(Vec<String>, Vec<Map<String, Value>>)) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.write_record(columns.iter().map(|c| row.get(c).map(scalar_text).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

/// Merges report files into one CSV table, one row per payload entry,
/// prefixed with the report's source file, subcommand, timestamp and exit
/// status.
pub fn merge_reports(inputs: &[PathBuf]) -> Result<String> {
    let mut tagged = Vec::new();
    for path in inputs {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let report: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let payload = report.get("payload").with_context(|| format!("{} has no payload", path.display()))?;
        let (_, rows) = table(std::slice::from_ref(payload));
        for row in rows {
            let mut full = Map::new();
            full.insert("source".into(), Value::String(path.display().to_string()));
            for key in ["subcommand", "timestamp", "exit_status"] {
                full.insert(key.into(), report.get(key).cloned().unwrap_or(Value::Null));
            }
            full.extend(row);
            tagged.push(Value::Object(full));
        }
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &table(&[Value::Array(tagged)]))?;
    Ok(String::from_utf8(buf)?)
}

//! Report rendering: the JSON report itself, or its rows as CSV or a table.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Scalars print bare; arrays and objects print as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).expect("value serializes"),
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn grid(rows: &[Value]) -> (Vec<String>, Vec<Vec<String>>) {
    let cols = columns(rows);
    let body = rows.iter().map(|r| cols.iter().map(|c| r.get(c).map_or_else(String::new, cell)).collect()).collect();
    (cols, body)
}

pub fn render(report: &Value, format: Format) -> Result<String, String> {
    let rows = report["result"].as_array().map_or(&[][..], Vec::as_slice);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).map_err(|e| e.to_string())? + "\n"),
        Format::Csv => {
            let (cols, body) = grid(rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&cols).map_err(|e| e.to_string())?;
            for r in body {
                w.write_record(&r).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        Format::Table => {
            let (cols, body) = grid(rows);
            let widths: Vec<usize> =
                (0..cols.len()).map(|i| body.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap_or(0)).collect();
            let line = |r: &[String]| {
                r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                    + "\n"
            };
            let mut out = line(&cols);
            for r in &body {
                out += &line(r);
            }
            Ok(out)
        }
    }
}

//! Report output: the structured format and the human tables.

use std::io::Write;

use crate::error::Result;
use crate::io::report::{to_string, Value};

/// Output flavor for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    /// Deterministic structured text (JSON-compatible).
    #[default]
    Json,
    /// Human-readable tables.
    Table,
}

fn fmt_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) => {
            if f.is_finite() {
                format!("{f:.3}")
            } else {
                f.to_string()
            }
        }
        Value::Str(s) => s.clone(),
        _ => "...".to_string(),
    }
}

/// Render the rejection-table report in the reference row layout: one block
/// per preference with `# violations`, `max inequality`, and `rej prob` rows
/// across columns.
fn render_table1(report: &Value, out: &mut String) {
    let Some(columns) = report.get("columns").and_then(Value::as_array) else {
        return;
    };
    let labels: Vec<String> = columns
        .iter()
        .map(|c| c.get("label").and_then(Value::as_str).unwrap_or("?").to_string())
        .collect();
    out.push_str(&format!("{:32}", ""));
    for l in &labels {
        out.push_str(&format!("{l:>24}"));
    }
    out.push('\n');
    out.push_str(&format!("{:32}", "# restrictions"));
    for c in columns {
        out.push_str(&format!(
            "{:>24}",
            c.get("n_restrictions").map(fmt_cell).unwrap_or_default()
        ));
    }
    out.push('\n');
    let Some(prefs) = report.get("preferences").and_then(Value::as_array) else {
        return;
    };
    for pref in prefs {
        let name = pref.get("preference").and_then(Value::as_str).unwrap_or("?");
        out.push_str(&format!("{name}\n"));
        for (key, label) in [
            ("n_violations", "  # violations"),
            ("max_inequality", "  max inequality"),
            ("rej_prob", "  rej prob"),
        ] {
            let cells = pref.get("cells").and_then(Value::as_array);
            let Some(cells) = cells else { continue };
            if cells.iter().all(|c| c.get(key).is_none()) {
                continue;
            }
            out.push_str(&format!("{label:32}"));
            for c in cells {
                out.push_str(&format!(
                    "{:>24}",
                    c.get(key).map(fmt_cell).unwrap_or_else(|| "-".to_string())
                ));
            }
            out.push('\n');
        }
    }
}

fn render_generic(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(entries) => {
            for (k, v) in entries {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{:indent$}{k}:\n", "", indent = indent));
                        render_generic(v, indent + 2, out);
                    }
                    _ => {
                        out.push_str(&format!(
                            "{:indent$}{k}: {}\n",
                            "",
                            fmt_cell(v),
                            indent = indent
                        ));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{:indent$}-\n", "", indent = indent));
                        render_generic(item, indent + 2, out);
                    }
                    _ => {
                        out.push_str(&format!(
                            "{:indent$}- {}\n",
                            "",
                            fmt_cell(item),
                            indent = indent
                        ));
                    }
                }
            }
        }
        other => {
            out.push_str(&format!("{:indent$}{}\n", "", fmt_cell(other), indent = indent));
        }
    }
}

/// Render a report as human-readable text.
pub fn to_table(report: &Value) -> String {
    let mut out = String::new();
    if report.get("command").and_then(Value::as_str) == Some("reproduce-table1") {
        render_table1(report, &mut out);
        out.push('\n');
    }
    render_generic(report, 0, &mut out);
    out
}

/// Write a report to stdout or a file.
pub fn emit_report(report: &Value, format: OutputFormat, out_path: Option<&str>) -> Result<()> {
    let text = match format {
        OutputFormat::Json => to_string(report),
        OutputFormat::Table => to_table(report),
    };
    match out_path {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

use std::fmt::Write;

use serde_json::Value;

use crate::report::{CheckRecord, ModelReport, Report};

/// Human-readable rendering with the same content and order as the JSON.
pub fn text(report: &Report) -> String {
    let mut out = String::new();
    for m in &report.models {
        model(&mut out, m);
        out.push('\n');
    }
    let _ = writeln!(out, "{}: {}", report.command, if report.passed { "pass" } else { "FAIL" });
    out
}

fn model(out: &mut String, m: &ModelReport) {
    let _ = writeln!(out, "model {} (dimension {})", m.name, m.dimension);
    let value = serde_json::to_value(m).expect("report is serializable");
    let Value::Object(fields) = value else { unreachable!("model reports are objects") };
    for (key, v) in &fields {
        if matches!(key.as_str(), "name" | "dimension" | "checks" | "notes") {
            continue;
        }
        let _ = writeln!(out, "  {}", label(key));
        section(out, v, 4);
    }
    if !m.checks.is_empty() {
        let _ = writeln!(out, "  checks");
        for c in &m.checks {
            check(out, c);
        }
    }
    for note in &m.notes {
        let _ = writeln!(out, "  note: {note}");
    }
}

fn check(out: &mut String, c: &CheckRecord) {
    let tag = match (c.asserted, c.holds) {
        (true, true) => "pass",
        (true, false) => "FAIL",
        (false, true) => "info: holds",
        (false, false) => "info: fails",
    };
    let _ = write!(out, "    [{tag}] {} — {}", c.id, c.invariant);
    if let Some(d) = &c.detail {
        let _ = write!(out, " ({d})");
    }
    out.push('\n');
}

fn label(key: &str) -> String {
    match key {
        "co_kahler" => "coKähler".into(),
        _ => key.replace('_', " "),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("({})", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items)
            if items
                .iter()
                .all(|x| x.as_array().is_some_and(|r| r.iter().all(|e| !e.is_object() && !e.is_array()))) =>
        {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")))
        }
        _ => None,
    }
}

fn section(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(fields) => {
            for (key, x) in fields {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{}: {s}", label(key));
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{}", label(key));
                        section(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        section(out, x, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

//! Plain-text tables for `--pretty`.

use std::fmt::Write;

use serde_json::Value;

use crate::suites::VerifyReport;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[Value]) {
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
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| cols.iter().map(|c| scalar(r.get(c).unwrap_or(&Value::Null))).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line =
        |vals: &[String]| vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ");
    let _ = writeln!(out, "    {}", line(&cols).trim_end());
    for r in &cells {
        let _ = writeln!(out, "    {}", line(r).trim_end());
    }
}

fn section(out: &mut String, indent: usize, map: &serde_json::Map<String, Value>) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match v {
            Value::Object(m) => {
                let _ = writeln!(out, "{pad}{k}:");
                section(out, indent + 2, m);
            }
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                let _ = writeln!(out, "{pad}{k}:");
                table(out, rows);
            }
            other => {
                let _ = writeln!(out, "{pad}{k:<20} {}", scalar(other));
            }
        }
    }
}

/// Renders a single-problem report document.
pub fn render_document(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} report", scalar(&doc["kind"]));
    if let Some(p) = doc.get("passed") {
        let _ = writeln!(out, "  status: {}", if p == &Value::Bool(true) { "PASS" } else { "FAIL" });
    }
    if let Value::Object(m) = &doc["results"] {
        section(&mut out, 2, m);
    }
    if let Value::Array(ws) = &doc["warnings"] {
        for w in ws {
            let _ = writeln!(out, "  warning: {}", scalar(w));
        }
    }
    out
}

pub fn render_verify(rep: &VerifyReport) -> String {
    let mut out = String::new();
    let width = rep.suites.iter().map(|s| s.suite.name().len()).max().unwrap_or(0);
    for s in &rep.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        let _ = write!(out, "{:<width$}  {status}  {:>4} cases", s.suite.name(), s.cases.len());
        if s.failures() > 0 {
            let _ = write!(out, "  {} failed", s.failures());
        }
        out.push('\n');
        for c in s.cases.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "    FAIL {}: {}", c.case, c.detail);
        }
    }
    match rep.first_failure() {
        None => out.push_str("all suites passed\n"),
        Some((s, c)) => {
            let _ = writeln!(out, "first failure: {s} / {}", c.case);
        }
    }
    out
}

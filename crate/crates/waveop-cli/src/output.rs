//! Deterministic CSV and JSON emission.
//!
//! Every command produces the same report shape: the echoed configuration,
//! a table of rows, and a list of verification checks (empty for the table
//! commands). JSON is a fixed-order object `{"config": ..., "rows": ...,
//! "checks": ...}`; CSV carries one `#` config comment line, a header row,
//! and the data. All reals are serialized with 17 significant digits so a
//! re-parse reproduces the in-memory doubles exactly.

use crate::config::RunConfig;

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
}

/// A named-column table.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// Direction of a verification bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Pass when `measured <= threshold` (residual-style checks).
    Upper,
    /// Pass when `measured >= threshold` (convergence-order checks).
    Lower,
}

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn upper(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            bound: Bound::Upper,
            passed: measured <= threshold,
            detail: String::new(),
        }
    }

    pub fn lower(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            bound: Bound::Lower,
            passed: measured >= threshold,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Full command output.
#[derive(Clone, Debug)]
pub struct Report {
    pub config: RunConfig,
    pub table: Table,
    pub checks: Vec<CheckResult>,
}

/// 17 significant digits; enough for the shortest round-trip of any f64.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x)
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => fmt_float(*x),
    }
}

fn config_pairs(cfg: &RunConfig) -> Vec<(&'static str, String)> {
    let mut pairs = vec![
        ("command", format!("\"{}\"", cfg.command)),
        ("v0", fmt_float(cfg.v0)),
        ("alpha", fmt_float(cfg.alpha)),
        ("beta", fmt_float(cfg.beta)),
        ("mu", fmt_float(cfg.mu)),
        ("hbar", fmt_float(cfg.hbar)),
        ("l", cfg.l.to_string()),
    ];
    if let Some(l_max) = cfg.l_max {
        pairs.push(("l_max", l_max.to_string()));
    }
    pairs.push(("dim", cfg.dim.to_string()));
    pairs.push(("states", cfg.n_states.to_string()));
    pairs.push(("format", format!("\"{}\"", cfg.format)));
    pairs.push(("seed", cfg.seed.to_string()));
    pairs
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => fmt_float(*x),
    }
}

/// Render the report as a JSON object with fixed key order.
pub fn to_json(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"config\": {");
    let pairs = config_pairs(&report.config);
    for (i, (k, v)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\n    \"{}\": {}", k, v));
    }
    out.push_str("\n  },\n  \"rows\": [");
    for (i, row) in report.table.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    {");
        for (j, (col, val)) in report.table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{}\": {}", col, json_value(val)));
        }
        out.push('}');
    }
    if !report.table.rows.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("],\n  \"checks\": [");
    for (i, check) in report.checks.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "\n    {{\"name\": \"{}\", \"measured\": {}, \"threshold\": {}, \"bound\": \"{}\", \"pass\": {}, \"detail\": \"{}\"}}",
            check.name,
            fmt_float(check.measured),
            fmt_float(check.threshold),
            match check.bound {
                Bound::Upper => "max",
                Bound::Lower => "min",
            },
            check.passed,
            json_escape(&check.detail),
        ));
    }
    if !report.checks.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

/// Render the report as CSV: a `#` config line, the header, the rows.
/// A verify report emits its checks as the table.
pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("# ");
    let pairs = config_pairs(&report.config);
    for (i, (k, v)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{}={}", k, v.replace('"', "")));
    }
    out.push('\n');

    if report.checks.is_empty() {
        out.push_str(&report.table.columns.join(","));
        out.push('\n');
        for row in &report.table.rows {
            let cells: Vec<String> = row.iter().map(fmt_value).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    } else {
        out.push_str("check,measured,threshold,bound,status,detail\n");
        for check in &report.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                check.name,
                fmt_float(check.measured),
                fmt_float(check.threshold),
                match check.bound {
                    Bound::Upper => "max",
                    Bound::Lower => "min",
                },
                if check.passed { "pass" } else { "fail" },
                check.detail.replace(',', ";"),
            ));
        }
    }
    out
}

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use dunkl::report::Report;
use dunkl::DunklError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command result, renderable in every format.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Tabular form; when absent, CSV is derived from the top-level JSON fields.
    pub csv: Option<String>,
    /// `Some(false)` makes the process exit with status 1.
    pub pass: Option<bool>,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output { json, text, csv: None, pass: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn from_reports(reports: &[Report], seed: u64) -> Self {
        let pass = reports.iter().all(Report::passed);
        let total: usize = reports.iter().map(|r| r.checks.len()).sum();
        let failed: usize = reports.iter().map(|r| r.checks.iter().filter(|c| !c.pass).count()).sum();
        let mut text = format!("seed {seed}\n");
        for r in reports {
            text.push_str(&r.to_text());
        }
        let _ = writeln!(text, "{} checks, {failed} failed: {}", total, if pass { "PASS" } else { "FAIL" });
        let mut csv = String::from("suite,context,name,pass,max_error,tolerance,detail\n");
        for r in reports {
            for c in &r.checks {
                let num = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    r.suite,
                    quote(&r.context),
                    c.name,
                    c.pass,
                    num(c.max_error),
                    num(c.tolerance),
                    quote(&c.detail)
                );
            }
        }
        Output::new(json!({ "seed": seed, "pass": pass, "checks": total, "failed": failed, "reports": reports }), text)
            .with_csv(csv)
            .with_pass(pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Csv => self.csv.clone().unwrap_or_else(|| flat_csv(&self.json)),
        }
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flat_csv(v: &Value) -> String {
    let mut s = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let cell = match val {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "{k},{}", quote(&cell));
        }
    }
    s
}

/// Structured error body with the module the error came from.
pub fn error_json(e: &DunklError) -> Value {
    json!({ "error": { "origin": e.origin(), "kind": if e.is_config() { "config" } else { "runtime" }, "message": e.to_string() } })
}

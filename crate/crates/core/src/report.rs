//! Pass/fail records shared by every verification suite.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    /// Short identifier, stable across runs.
    pub name: String,
    /// The identity being checked, in words.
    pub identity: String,
    pub pass: bool,
    /// Largest observed deviation, when the check is numeric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Witness or summary, e.g. the offending monomial.
    pub detail: String,
}

impl CheckOutcome {
    pub fn exact(name: &str, identity: &str, failure: Option<String>, checked: usize) -> Self {
        CheckOutcome {
            name: name.into(),
            identity: identity.into(),
            pass: failure.is_none(),
            max_error: None,
            tolerance: None,
            detail: failure.unwrap_or_else(|| format!("{checked} cases exact")),
        }
    }

    pub fn numeric(name: &str, identity: &str, max_error: f64, tolerance: f64, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            identity: identity.into(),
            pass: max_error.is_finite() && max_error <= tolerance,
            max_error: Some(max_error),
            tolerance: Some(tolerance),
            detail,
        }
    }

    pub fn flag(name: &str, identity: &str, pass: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            identity: identity.into(),
            pass,
            max_error: None,
            tolerance: None,
            detail,
        }
    }

    pub fn from_result(name: &str, identity: &str, r: crate::Result<CheckOutcome>) -> Self {
        r.unwrap_or_else(|e| CheckOutcome::flag(name, identity, false, format!("error: {e}")))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub context: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(suite: &str, context: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            context: context.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {} [{}]", self.suite, self.context);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let err = match (c.max_error, c.tolerance) {
                (Some(e), Some(t)) => format!(" err={e:.3e} tol={t:.0e}"),
                _ => String::new(),
            };
            let _ = writeln!(s, "{status} {} ({}){err}: {}", c.name, c.identity, c.detail);
        }
        s
    }
}

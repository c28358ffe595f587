//! Machine-readable command reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hopfind::{Error, Report};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Unsupported => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandReport {
    pub task: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl CommandReport {
    pub fn new(task: impl Into<String>) -> CommandReport {
        CommandReport {
            task: task.into(),
            status: Status::Pass,
            checks: Vec::new(),
            dimensions: BTreeMap::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: false, witness: Some(witness.into()) });
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn dim(&mut self, name: impl Into<String>, value: usize) {
        self.dimensions.insert(name.into(), value);
    }

    /// Records each failure of `r` under `prefix`, or one passing check named `summary`.
    /// Returns whether `r` was clean.
    pub fn absorb(&mut self, prefix: &str, summary: &str, r: Report) -> bool {
        if r.is_ok() {
            self.pass(format!("{prefix}{summary}"));
            return true;
        }
        for f in r.failures {
            self.fail(format!("{prefix}{}", f.check), f.witness);
        }
        false
    }

    /// Records a failed construction. Input errors end the command with status `error`,
    /// failed hypotheses with `unsupported`, everything else with `fail`.
    pub fn error(&mut self, e: &Error) {
        match e {
            e if e.is_input_error() => {
                self.status = Status::Error;
                self.error = Some(e.to_string());
            }
            Error::Check { check, witness } => self.fail(check.clone(), witness.clone()),
            Error::NotNormal(w) => {
                self.fail("BK⁺ = K⁺B", w.clone());
                self.status = Status::Unsupported;
                self.error = Some(e.to_string());
            }
            Error::Hypothesis(w) | Error::Unsupported(w) => {
                self.fail("hypotheses", w.clone());
                self.status = Status::Unsupported;
                self.error = Some(e.to_string());
            }
            Error::Freeness(w) => self.fail("A is a free right B-module", w.clone()),
            Error::NoFrobeniusSystem(w) => self.fail("β-Frobenius system exists", w.clone()),
            Error::DegenerateForm(w) => self.fail("φ admits dual bases", w.clone()),
            Error::TwistMismatch(w) => self.fail("A_β ≅ A* as bimodules", w.clone()),
            other => self.fail("construction", other.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = serde_json::to_value(self.status).expect("status serializes");
        let _ = writeln!(s, "{}: {}", self.task, status.as_str().unwrap_or_default());
        for c in &self.checks {
            match &c.witness {
                None => {
                    let _ = writeln!(s, "  ok    {}", c.name);
                }
                Some(w) => {
                    let _ = writeln!(s, "  FAIL  {} [{w}]", c.name);
                }
            }
        }
        for (k, v) in &self.dimensions {
            let _ = writeln!(s, "  dim {k} = {v}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "  error: {e}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "  time {t} ms");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_first_problem() {
        let mut r = CommandReport::new("t");
        r.pass("a");
        assert_eq!(r.exit_code(), 0);
        r.error(&Error::check("assoc", "(x, y, z)"));
        assert_eq!(r.status, Status::Fail);
        r.error(&Error::Input("bad".into()));
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_text().contains("FAIL  assoc [(x, y, z)]"));
    }

    #[test]
    fn not_normal_is_unsupported_with_witness() {
        let mut r = CommandReport::new("t");
        r.error(&Error::NotNormal("BK⁺ ⊄ K⁺B, witness x".into()));
        assert_eq!(r.status, Status::Unsupported);
        assert_eq!(r.exit_code(), 1);
        assert!(r.checks[0].witness.as_deref().unwrap().contains("witness x"));
    }
}

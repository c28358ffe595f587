use serde::Serialize;

use crate::error::{Error, Result};

/// A failed check with its first-found witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

/// Outcome of a verification pass. Empty means every check held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.failures.push(Failure { check: check.into(), witness: witness.into() });
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.failures.extend(other.failures);
    }

    pub fn first(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn has(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(Error::Check { check: f.check, witness: f.witness }),
        }
    }
}

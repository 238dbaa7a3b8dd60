//! Exhaustive and sampled property suites over the group constructions, shared by
//! the CLI and the test targets.

pub mod homs;
pub mod lambda;
pub mod wreath;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteCheck {
    pub fn new(name: &str) -> Self {
        SuiteCheck {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    /// Folds in a partial tally; the earlier first failure wins.
    pub fn merge(&mut self, other: SuiteCheck) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SuiteCheck::passed)
    }

    pub fn cases(&self) -> u64 {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Merges per-task tallies in task order.
pub(crate) fn merge_all(name: &str, parts: impl IntoIterator<Item = SuiteCheck>) -> SuiteCheck {
    let mut out = SuiteCheck::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}


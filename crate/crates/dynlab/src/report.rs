//! Suite results, check records and exit codes.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Blocked by a work budget; never counts as a pass.
    Censored,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    /// Slug of the statement the check reproduces.
    pub anchor: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: &str,
        ok: bool,
        details: impl Into<String>,
    ) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check {
            name: name.into(),
            status,
            details: details.into(),
            anchor: anchor.to_string(),
        }
    }

    pub fn censored(name: impl Into<String>, anchor: &str, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Censored,
            details: details.into(),
            anchor: anchor.to_string(),
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    /// Sorted by name.
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn new(suite: &str, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        SuiteResult {
            suite: suite.to_string(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status != Status::Pass)
            .collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            exit::PROPERTY
        } else if self.checks.iter().any(|c| c.status == Status::Censored) {
            exit::BUDGET
        } else {
            exit::OK
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Censored => "censored",
            };
            s += &format!("  [{tag}] {} ({}): {}\n", c.name, c.anchor, c.details);
        }
        s
    }
}

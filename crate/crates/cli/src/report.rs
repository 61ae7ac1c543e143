//! The machine-readable result of `run`.

use serde::{Deserialize, Serialize};
use vimotest::runtime::{ScenarioResult, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunReport {
    pub tool_version: String,
    pub suites: Vec<SuiteReport>,
    pub totals: Totals,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SuiteReport {
    pub name: String,
    pub scenarios: Vec<ScenarioResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

impl Totals {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errored == 0
    }
}

impl RunReport {
    /// Totals are computed from `suites`.
    pub fn new(suites: Vec<SuiteReport>) -> RunReport {
        let mut totals = Totals::default();
        for s in suites.iter().flat_map(|s| &s.scenarios) {
            match s.status {
                Status::Passed => totals.passed += 1,
                Status::Failed => totals.failed += 1,
                Status::Error => totals.errored += 1,
            }
        }
        RunReport { tool_version: env!("CARGO_PKG_VERSION").to_string(), suites, totals }
    }
}

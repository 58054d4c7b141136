use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ears::SupportPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Disagrees with a claim that is already known to be misstated.
    Flagged,
    /// Not run because an earlier stage failed.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Flagged => "flagged",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffSide {
    /// Predicted by the family, absent from the support.
    Missing,
    /// Present in the support, not predicted.
    Extra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffPoint {
    pub side: DiffSide,
    #[serde(flatten)]
    pub point: SupportPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entry: String,
    pub family: String,
    pub rank: usize,
    pub checks: Vec<Check>,
    /// Grade, written `(0,1)`, to dimension.
    pub dims: BTreeMap<String, usize>,
    /// Grade to `[highest weight, dimension]` of each irreducible summand.
    pub modules: BTreeMap<String, Vec<(Vec<i64>, usize)>>,
    pub support_diff: Vec<DiffPoint>,
    pub notes: Vec<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

pub fn grade_key(g: &[u32]) -> String {
    format!("({})", g.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

impl Report {
    pub fn new(entry: &str, family: &str, rank: usize) -> Self {
        Report {
            entry: entry.into(),
            family: family.into(),
            rank,
            checks: Vec::new(),
            dims: BTreeMap::new(),
            modules: BTreeMap::new(),
            support_diff: Vec::new(),
            notes: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, name: &str, status: Status, details: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, details: details.into() });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `Fail` if any check failed or was skipped, else `Flagged` if any check
    /// was flagged, else `Pass`.
    pub fn verdict(&self) -> Status {
        if self.checks.iter().any(|c| matches!(c.status, Status::Fail | Status::Skipped)) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Flagged) {
            Status::Flagged
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]: {}", self.entry, self.family, self.verdict())?;
        for c in &self.checks {
            writeln!(f, "  {:<14} {:<8} {}", c.name, c.status.to_string(), c.details)?;
        }
        Ok(())
    }
}

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::multivector::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An expected counterexample was found.
    Witness,
}

/// Outcome of one verification claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub signature: Option<Signature>,
    pub group: Option<String>,
    pub status: Status,
    pub details: Value,
}

impl Report {
    pub fn new(claim: impl Into<String>, status: Status) -> Self {
        Report {
            claim: claim.into(),
            signature: None,
            group: None,
            status,
            details: Value::Null,
        }
    }

    pub fn check(claim: impl Into<String>, ok: bool) -> Self {
        Report::new(claim, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn with_signature(mut self, sig: Signature) -> Self {
        self.signature = Some(sig);
        self
    }

    pub fn with_group(mut self, group: impl Into<String>) -> Self {
        self.group = Some(group.into());
        self
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// True when no report failed.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

pub fn failures(reports: &[Report]) -> Vec<&Report> {
    reports.iter().filter(|r| !r.passed()).collect()
}

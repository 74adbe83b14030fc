//! Machine-readable check records shared by the claim runners, the CLI and
//! the acceptance suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A printed closed form disagrees with the constructive or oracle
    /// result; never changes the exit status.
    Errata,
    /// Nothing to check at these sizes (no admissible sequences).
    Vacuous,
    Info,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Errata => "errata",
            Status::Vacuous => "vacuous",
            Status::Info => "info",
        }
    }
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub oracle: usize,
    pub generated: usize,
}

/// What was printed, what was observed, and the form that matches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Errata {
    pub target: String,
    pub printed: String,
    pub observed: String,
    pub amended: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claim_ref: String,
    pub status: Status,
    pub dims: Option<Dims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errata: Option<Errata>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, claim_ref: impl Into<String>, status: Status) -> Self {
        Self { id: id.into(), claim_ref: claim_ref.into(), status, dims: None, witness: None, errata: None, detail: None }
    }

    pub fn dims(mut self, oracle: usize, generated: usize) -> Self {
        self.dims = Some(Dims { oracle, generated });
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    pub fn errata(mut self, e: Errata) -> Self {
        self.errata = Some(e);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// True when no check failed.
pub fn all_passed(checks: &[Check]) -> bool {
    !checks.iter().any(|c| c.status.is_failure())
}

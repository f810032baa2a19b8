//! Pass/fail records produced by the verification routines.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// A residual compared against a tolerance; NaN residuals fail.
    pub fn measured(id: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual.is_finite() && residual <= tolerance { Status::Pass } else { Status::Fail };
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: Some(residual),
            tolerance: Some(tolerance),
            status,
            note: None,
        }
    }

    pub fn verdict(id: impl Into<String>, anchor: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance: None,
            status: if ok { Status::Pass } else { Status::Fail },
            note: Some(note.into()),
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance: None,
            status: Status::Skipped,
            note: Some(reason.into()),
        }
    }

    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, error: &crate::Error) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance: None,
            status: Status::Fail,
            note: Some(error.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

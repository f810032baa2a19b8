use std::fmt::Write as _;

use aqg_core::check::{Check, Status};
use aqg_core::Tolerance;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json or text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToleranceRecord {
    pub abs: f64,
    pub rel: f64,
    pub membership: f64,
}

impl From<&Tolerance> for ToleranceRecord {
    fn from(t: &Tolerance) -> Self {
        Self { abs: t.abs_tol, rel: t.rel_tol, membership: t.membership_tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Derived {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Outcome of one pipeline run. Field order and contents depend only on the
/// input and the tolerance, so serializations are byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: String,
    pub tolerance: ToleranceRecord,
    pub stages: Vec<StageRecord>,
    pub derived: Vec<Derived>,
    pub summary: Summary,
}

impl Report {
    pub fn new(input: impl Into<String>, tol: &Tolerance) -> Self {
        Self {
            input: input.into(),
            tolerance: tol.into(),
            stages: Vec::new(),
            derived: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push_stage(&mut self, stage: &str, checks: Vec<Check>) {
        for c in &checks {
            match c.status {
                Status::Pass => self.summary.passed += 1,
                Status::Fail => self.summary.failed += 1,
                Status::Skipped => self.summary.skipped += 1,
            }
        }
        self.stages.push(StageRecord { stage: stage.to_string(), checks });
    }

    pub fn derive(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.derived.push(Derived { key: key.into(), value: value.into() });
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.stages.iter().flat_map(|s| s.checks.iter())
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks().find(|c| c.id == id)
    }

    pub fn derived_value(&self, key: &str) -> Option<&str> {
        self.derived.iter().find(|d| d.key == key).map(|d| d.value.as_str())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.tolerance;
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "tolerance: abs {:e}, rel {:e}, membership {:e}", t.abs, t.rel, t.membership);
        for stage in &self.stages {
            let _ = writeln!(out, "\n[{}]", stage.stage);
            for c in &stage.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let measure = match (c.residual, c.tolerance) {
                    (Some(r), Some(tol)) => format!("  residual {r:.3e} (tol {tol:.0e})"),
                    _ => String::new(),
                };
                let _ = writeln!(out, "  {tag} {}{measure}", c.id);
                let _ = writeln!(out, "       {}", c.anchor);
                if let Some(note) = &c.note {
                    let _ = writeln!(out, "       {note}");
                }
            }
        }
        if !self.derived.is_empty() {
            let _ = writeln!(out, "\n[derived values]");
            for d in &self.derived {
                let _ = writeln!(out, "  {} = {}", d.key, d.value);
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "\nsummary: {} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
        out
    }
}

//! Machine-readable verification reports.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    /// Stable identifier of the check.
    pub id: String,
    pub verdict: Verdict,
    /// Exact residual (symbolic checks) or numeric residual magnitude.
    pub residual: String,
    /// Human-readable description of what the check verifies.
    pub anchor: String,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub entries: Vec<ReportEntry>,
    pub overall: Verdict,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            entries: Vec::new(),
            overall: Verdict::Pass,
        }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        if entry.verdict == Verdict::Fail {
            self.overall = Verdict::Fail;
        }
        self.entries.push(entry);
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        residual: impl Into<String>,
        wall_ms: u128,
    ) {
        self.push(ReportEntry {
            id: id.into(),
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
            residual: residual.into(),
            anchor: anchor.into(),
            wall_ms,
        });
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
        std::fs::write(path, body).map_err(|e| Error::io(path, e))
    }
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

//! Verification report documents and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ccgeom::experiments::{ExperimentConfig, ExperimentReport};
use ccgeom::Tolerances;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Everything needed to reproduce a `verify` run, plus its outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub config: ExperimentConfig,
    pub passed: bool,
    pub reports: Vec<ExperimentReport>,
    /// Wall-clock seconds per experiment. Absent unless requested, so that
    /// documents for the same seed are byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl ReportDocument {
    pub fn new(config: ExperimentConfig, reports: Vec<ExperimentReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            tolerances: config.tolerances,
            passed: reports.iter().all(|r| r.passed),
            config,
            reports,
            timings: None,
        }
    }

    /// Structural checks every written document satisfies.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Parse(format!("invalid report: {m}")));
        if self.schema_version != SCHEMA_VERSION {
            return bad("schema version");
        }
        if self.seed != self.config.seed || self.tolerances != self.config.tolerances {
            return bad("header disagrees with config");
        }
        if self.passed != self.reports.iter().all(|r| r.passed) {
            return bad("overall verdict disagrees with reports");
        }
        for r in &self.reports {
            if r.passed != r.failures.is_empty() {
                return bad(&format!("{} verdict disagrees with its failures", r.name));
            }
            if r.metrics.values().any(|v| !v.is_finite()) {
                return bad(&format!("{} has a non-finite metric", r.name));
            }
        }
        if let Some(t) = &self.timings {
            if t.len() != self.reports.len() {
                return bad("timings do not cover the reports");
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: ReportDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{verdict} {:<20} trials={:<5} failures={}", r.name, r.trials_run, r.failures.len());
            if let Some(t) = self.timings.as_ref().and_then(|t| t.get(&r.name)) {
                let _ = write!(out, " time={t:.3}s");
            }
            out.push('\n');
            for f in r.failures.iter().take(5) {
                let _ = writeln!(out, "    trial {} (seed {}): {}", f.trial, f.seed, f.description);
            }
            if r.failures.len() > 5 {
                let _ = writeln!(out, "    ... {} more", r.failures.len() - 5);
            }
        }
        let passed = self.reports.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} experiments passed (seed {})", self.reports.len(), self.seed);
        out
    }
}

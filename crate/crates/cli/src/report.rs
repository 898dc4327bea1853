//! The JSON run report.

use std::collections::BTreeMap;

use serde::Serialize;
use superriccati::riccati::ResidualReport;

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_FAIL, EXIT_PASS};

/// Tool identifier written into every report.
pub const GENERATED: &str = concat!("superriccati-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One scalar pass/fail comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value <= tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub message: String,
    /// Time at which the run failed, when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub generated: String,
    pub mode: String,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<String, ResidualReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub outputs: Vec<String>,
}

impl Report {
    pub fn new(mode: String, config: Option<RunConfig>) -> Self {
        Report {
            generated: GENERATED.to_string(),
            mode,
            status: Status::Pass,
            exit_code: EXIT_PASS,
            config,
            checks: Vec::new(),
            residuals: BTreeMap::new(),
            notes: Vec::new(),
            details: None,
            error: None,
            outputs: Vec::new(),
        }
    }

    /// Adds the results of a completed run; any failed check turns the
    /// status to `fail`.
    pub fn absorb(
        &mut self,
        checks: Vec<Check>,
        residuals: BTreeMap<String, ResidualReport>,
        notes: Vec<String>,
        details: Option<serde_json::Value>,
    ) {
        self.checks.extend(checks);
        self.residuals.extend(residuals);
        self.notes.extend(notes);
        if details.is_some() {
            self.details = details;
        }
        if self.status == Status::Pass && self.checks.iter().any(|c| !c.passed) {
            self.status = Status::Fail;
            self.exit_code = EXIT_FAIL;
        }
    }

    /// Records an error; the first error fixes the exit code.
    pub fn fail_with(&mut self, e: &CliError) {
        if self.error.is_some() {
            return;
        }
        self.status = Status::Error;
        self.exit_code = e.exit_code();
        self.error = Some(ErrorInfo {
            message: e.to_string(),
            location: e.location(),
        });
    }

    /// Short human-readable summary for the console.
    pub fn summary(&self) -> String {
        let mode = if self.mode.is_empty() { "run" } else { &self.mode };
        let mut lines = vec![format!("{mode}: {:?} (exit {})", self.status, self.exit_code).to_lowercase()];
        for c in &self.checks {
            let verdict = if c.passed { "ok" } else { "FAILED" };
            lines.push(format!(
                "  {}: {:.3e} (tolerance {:.1e}) {verdict}",
                c.name, c.value, c.tolerance
            ));
        }
        for n in &self.notes {
            lines.push(format!("  note: {n}"));
        }
        if let Some(e) = &self.error {
            lines.push(format!("  error: {}", e.message));
        }
        for o in &self.outputs {
            lines.push(format!("  wrote {o}"));
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_sets_exit_two() {
        let mut r = Report::new("m".into(), None);
        r.absorb(vec![Check::at_most("x", 2.0, 1.0)], BTreeMap::new(), vec![], None);
        assert_eq!((r.status, r.exit_code), (Status::Fail, 2));
    }

    #[test]
    fn first_error_wins() {
        let mut r = Report::new("m".into(), None);
        r.fail_with(&CliError::Invalid("a".into()));
        r.fail_with(&CliError::Input {
            path: "p".into(),
            message: "b".into(),
        });
        assert_eq!(r.error.unwrap().message, "invalid config: a");
    }
}

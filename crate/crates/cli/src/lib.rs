//! Config-driven runs of the superfield Riccati solver: load a JSON run
//! config, execute a named mode, write CSV trajectories and a JSON report.

pub mod config;
pub mod error;
pub mod modes;
pub mod report;

pub use config::{Context, RunConfig, Tolerances};
pub use error::CliError;
pub use modes::{Mode, ModeRegistry, Outcome};
pub use report::{Check, ErrorInfo, Report, Status};

use std::fs;
use std::path::{Path, PathBuf};

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<String>,
    pub out: Option<String>,
}

/// Result of one invocation: the report plus the files written.
#[derive(Debug)]
pub struct Execution {
    pub report: Report,
    /// Free text for the console (the audit for `derive-system`).
    pub console: Option<String>,
}

impl Execution {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }
}

/// Loads `config_path`, runs the selected mode and writes all outputs.
pub fn execute(config_path: &Path, overrides: &Overrides, registry: &ModeRegistry) -> Execution {
    let config = match RunConfig::load(config_path) {
        Ok(c) => c,
        Err(e) => {
            let mode = overrides.mode.clone().unwrap_or_default();
            let mut report = Report::new(mode, None);
            report.fail_with(&e);
            if let Some(prefix) = &overrides.out {
                let _ = write_report(prefix, &mut report);
            }
            return Execution {
                report,
                console: None,
            };
        }
    };
    execute_config(config, overrides, registry)
}

/// Runs an already parsed config.
pub fn execute_config(mut config: RunConfig, overrides: &Overrides, registry: &ModeRegistry) -> Execution {
    if let Some(m) = &overrides.mode {
        config.mode = Some(m.clone());
    }
    if let Some(o) = &overrides.out {
        config.output = Some(o.clone());
    }
    let mode_name = config.mode.clone().unwrap_or_default();
    let prepared = registry.get(&mode_name).and_then(|mode| {
        let ctx = Context::prepare(&config, mode.requires())?;
        Ok((mode, ctx))
    });
    let (mode, ctx) = match prepared {
        Ok(p) => p,
        Err(e) => {
            let mut report = Report::new(mode_name, None);
            report.fail_with(&e);
            if let Some(prefix) = &config.output {
                let _ = write_report(prefix, &mut report);
            }
            return Execution {
                report,
                console: None,
            };
        }
    };
    let mut report = Report::new(mode_name, Some(ctx.effective_config()));
    let mut console = None;
    match mode.run(&ctx) {
        Ok(outcome) => {
            let written = write_outcome(&ctx.output, &outcome).map(|paths| {
                report.outputs = paths;
            });
            report.absorb(outcome.checks, outcome.residuals, outcome.notes, outcome.details);
            if let Err(e) = written {
                report.fail_with(&e);
            }
            console = outcome.text.map(|(_, text)| text);
        }
        Err(e) => report.fail_with(&e),
    }
    if let Err(e) = write_report(&ctx.output, &mut report) {
        report.fail_with(&e);
    }
    Execution { report, console }
}

fn output_path(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}{suffix}"))
}

fn create_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            fs::create_dir_all(dir).map_err(|source| CliError::Write {
                path: dir.display().to_string(),
                source,
            })
        }
        _ => Ok(()),
    }
}

fn write_outcome(prefix: &str, outcome: &Outcome) -> Result<Vec<String>, CliError> {
    let mut written = Vec::new();
    for (suffix, traj) in &outcome.trajectories {
        let path = output_path(prefix, &format!("{suffix}.csv"));
        create_parent(&path)?;
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).map_err(|e| CliError::Write {
            path: path.display().to_string(),
            source: std::io::Error::other(e.to_string()),
        })?;
        write_file(&path, &buf)?;
        written.push(path.display().to_string());
    }
    if let Some((suffix, text)) = &outcome.text {
        let path = output_path(prefix, suffix);
        create_parent(&path)?;
        write_file(&path, text.as_bytes())?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `<prefix>.report.json`, registering it among the outputs.
fn write_report(prefix: &str, report: &mut Report) -> Result<(), CliError> {
    let path = output_path(prefix, ".report.json");
    create_parent(&path)?;
    report.outputs.push(path.display().to_string());
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_file(&path, text.as_bytes())
}

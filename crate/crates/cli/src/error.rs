use superriccati::riccati::RiccatiError;
use thiserror::Error;

/// Exit code of a passing run.
pub const EXIT_PASS: i32 = 0;
/// Pole, singularity or domain failure during a run.
pub const EXIT_RUNTIME: i32 = 1;
/// Invalid config or a failed check.
pub const EXIT_FAIL: i32 = 2;
/// Config file missing or not parseable.
pub const EXIT_UNREADABLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config `{path}`: {source}")]
    ReadConfig {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config `{path}`: {source}")]
    ParseConfig {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("cannot read input `{path}`: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Riccati(#[from] RiccatiError),
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ReadConfig { .. } | CliError::ParseConfig { .. } => EXIT_UNREADABLE,
            CliError::Invalid(_) | CliError::Input { .. } => EXIT_FAIL,
            CliError::Riccati(e) if e.is_runtime() => EXIT_RUNTIME,
            CliError::Riccati(_) => EXIT_FAIL,
            CliError::Write { .. } => EXIT_RUNTIME,
        }
    }

    /// Time at which a run failed, when known.
    pub fn location(&self) -> Option<f64> {
        match self {
            CliError::Riccati(e) => e.location(),
            _ => None,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag value; exit code 2.
    #[error("{flag}: {message}")]
    Usage { flag: String, message: String },

    /// Numerical failure; exit code 3.
    #[error(transparent)]
    Compute(fraclog_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{failed} of {total} verification checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn usage(flag: &str, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag: flag.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Compute(_) | CliError::VerifyFailed { .. } => 3,
            CliError::Io { .. } => 1,
        }
    }
}

/// Maps a core field name to the flag that sets it.
pub fn flag_for_field(field: &str) -> &'static str {
    match field {
        "lam" => "--lambda",
        "alpha" => "--alpha",
        "beta" => "--beta",
        "x" => "--x",
        "x0" => "--x0",
        "transient" => "--transient",
        "samples" => "--samples",
        "escape_bound" => "--escape-bound",
        "steps" => "--steps",
        "max_period" => "--max-period",
        "tol" => "--tol",
        "workers" => "--workers",
        "max_k" => "--max-k",
        "axis_min" => "--lambda-min/--alpha-min",
        "axis_max" => "--lambda-max/--alpha-max",
        _ => "--?",
    }
}

impl From<fraclog_core::Error> for CliError {
    fn from(e: fraclog_core::Error) -> Self {
        match e.field() {
            Some(field) => CliError::Usage {
                flag: flag_for_field(field).to_string(),
                message: e.to_string(),
            },
            None => CliError::Compute(e),
        }
    }
}

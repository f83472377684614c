//! Library half of the `bap` command-line tool: file formats, output
//! rendering, and the random-graph simulation sweep. The binary in
//! `main.rs` is a thin clap wrapper over these functions.

pub mod io;
pub mod report;
pub mod sim;

use thiserror::Error;

/// CLI-level failures, each mapped to a stable process exit code:
/// 1 usage/parse, 2 infeasible instance, 3 certification violations.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },

    #[error("infeasible instance: no assignment covers every agent")]
    Infeasible,

    #[error("{violations} of {trials} sampled perturbations moved the bottleneck")]
    Violations { violations: usize, trials: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Infeasible => 2,
            CliError::Violations { .. } => 3,
        }
    }
}

/// Maps solver errors surfacing at the CLI boundary. Anything other than
/// infeasibility means the input file described an invalid instance.
pub fn from_core(err: bap_core::Error, path: &str) -> CliError {
    match err {
        bap_core::Error::Infeasible => CliError::Infeasible,
        other => CliError::Parse {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

//! Experiment driver: Swiss roll generation, LLE runs in exact and
//! regularized mode, eps sweeps, CSV reports and SVG scatter plots.

pub mod commands;
pub mod config;
pub mod report;
pub mod svg;

use lle_core::LleError;
use thiserror::Error;

pub use commands::{build_cloud, cmd_generate, cmd_run, cmd_sweep_eps, experiment};
pub use config::{ExperimentConfig, ModeKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(LleError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<LleError> for CliError {
    fn from(e: LleError) -> Self {
        match e {
            LleError::Io(io) => CliError::Io(io),
            LleError::InvalidInput(_)
            | LleError::DimensionMismatch { .. }
            | LleError::EmptySupport
            | LleError::NoRows
            | LleError::Parse { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    /// 2 for configuration or input problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

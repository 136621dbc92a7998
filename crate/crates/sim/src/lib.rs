//! Monte Carlo BER harness for the one-bit MIMO detectors in `onebit-mimo`.
//!
//! [`experiment::run_experiment`] sweeps SNR and pilot length over many
//! independent coherence blocks in parallel; [`results`] reads and writes the
//! CSV/JSON record files; [`estimate`] dumps estimated against true model
//! parameters for a single block.

use std::path::Path;

use thiserror::Error;

pub mod config;
pub mod estimate;
pub mod experiment;
pub mod results;

pub use config::{ExperimentConfig, NoiseSetting};
pub use experiment::{run_experiment, BerRecord};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] onebit_mimo::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("I/O error: {0}")]
    Stream(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl SimError {
    /// Attach a file path to stream-level I/O failures.
    pub fn with_path(self, path: &Path) -> Self {
        let path = path.display().to_string();
        match self {
            SimError::Stream(source) => SimError::Io { path, source },
            SimError::Csv(e) if e.is_io_error() => match e.into_kind() {
                csv::ErrorKind::Io(source) => SimError::Io { path, source },
                _ => unreachable!("checked is_io_error"),
            },
            other => other,
        }
    }

    /// Whether the error comes from invalid user input rather than I/O.
    pub fn is_config(&self) -> bool {
        matches!(self, SimError::Config(_) | SimError::Core(_))
    }
}

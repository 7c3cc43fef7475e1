//! Experiment harness for the `softfusion` engine: configuration, the
//! ROC / convergence / sweep / validation experiments, and their CSV output.

pub mod cli;
pub mod config;
pub mod convergence;
pub mod csv_out;
pub mod error;
pub mod roc;
pub mod sweep;
pub mod validate;

pub use config::{ExperimentConfig, SweepConfig, ValidateConfig};
pub use error::{HarnessError, Result};

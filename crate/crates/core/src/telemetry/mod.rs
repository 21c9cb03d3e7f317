//! Per-generation measurements, run traces and parameter sweeps.

pub mod csv;
mod record;
mod stats;
mod sweep;

use thiserror::Error;

pub use record::{gbest_cardinalities, GenerationRecord, RunTrace};
pub use stats::{fitness_stats, FitnessStats};
pub use sweep::{sweep, SweepCell, SweepOutcome, SweepReport, SweepVariable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TelemetryError {
    #[error("fitness list is empty")]
    EmptyList,
    #[error("trace has no generation records")]
    EmptyTrace,
    #[error("csv: {0}")]
    Csv(String),
    #[error("json: {0}")]
    Json(String),
}

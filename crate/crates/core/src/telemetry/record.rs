use serde::{Deserialize, Serialize};

use crate::equation::{DiophantineEquation, Fitness};
use crate::swarm::{SwarmConfig, TerminationReason};
use crate::telemetry::TelemetryError;

/// Telemetry captured at the end of one generation.
///
/// gbest and pbest columns describe the swarm after solutions were
/// harvested; the `fitness_*` columns describe the positions the particles
/// moved to, before any harvested particle was replaced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: u64,
    pub gbest_fitness: Fitness,
    pub gbest_position: Vec<u64>,
    /// gbest position differs from the one at the end of the previous
    /// generation (or from the initial gbest, for the first record).
    pub gbest_changed: bool,
    pub pbest_fitness_mean: f64,
    pub fitness_mean: f64,
    pub fitness_median: Fitness,
    pub fitness_stddev: f64,
    /// Mean of `|v_new - v_old|` over all particles and coordinates.
    pub velocity_update_mean_abs: f64,
    pub harvests: u32,
}

/// Full log of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub config: SwarmConfig,
    pub equation: DiophantineEquation,
    pub records: Vec<GenerationRecord>,
    pub solutions: Vec<Vec<u64>>,
    pub termination_reason: TerminationReason,
}

impl RunTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TelemetryError> {
        serde_json::from_str(text).map_err(|e| TelemetryError::Json(e.to_string()))
    }
}

/// Run-length encoding of the gbest position column: each entry is a gbest
/// position and the number of consecutive generations it held.
pub fn gbest_cardinalities(records: &[GenerationRecord]) -> Result<Vec<(Vec<u64>, u64)>, TelemetryError> {
    if records.is_empty() {
        return Err(TelemetryError::EmptyTrace);
    }
    let mut runs: Vec<(Vec<u64>, u64)> = Vec::new();
    for r in records {
        match runs.last_mut() {
            Some((pos, count)) if *pos == r.gbest_position => *count += 1,
            _ => runs.push((r.gbest_position.clone(), 1)),
        }
    }
    Ok(runs)
}

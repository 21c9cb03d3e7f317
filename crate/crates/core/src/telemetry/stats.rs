use serde::{Deserialize, Serialize};

use crate::equation::Fitness;
use crate::telemetry::TelemetryError;

/// Summary of one generation's particle fitnesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessStats {
    pub mean: f64,
    /// Lower median.
    pub median: Fitness,
    /// Population standard deviation.
    pub stddev: f64,
}

pub fn fitness_stats(fitnesses: &[Fitness]) -> Result<FitnessStats, TelemetryError> {
    if fitnesses.is_empty() {
        return Err(TelemetryError::EmptyList);
    }
    let count = fitnesses.len() as f64;
    let mean = fitnesses.iter().map(|&f| f as f64).sum::<f64>() / count;
    let variance = fitnesses
        .iter()
        .map(|&f| {
            let d = f as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / count;
    let mut sorted = fitnesses.to_vec();
    sorted.sort_unstable();
    let median = sorted[(sorted.len() - 1) / 2];
    Ok(FitnessStats {
        mean,
        median,
        stddev: variance.sqrt(),
    })
}

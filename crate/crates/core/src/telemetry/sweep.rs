use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equation::DiophantineEquation;
use crate::swarm::{run, SwarmConfig, SwarmError};

/// Which configuration field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    PopulationSize,
    Seed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub seed: u64,
    /// `None` when the run exhausted its generation budget.
    pub generations_to_first_solution: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub value: u64,
    pub outcomes: Vec<SweepOutcome>,
    pub solved: usize,
    /// Mean generations to first solution; unsolved runs count as the full budget.
    pub mean_generations: f64,
    /// Lower median under the same convention.
    pub median_generations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub variable: SweepVariable,
    pub max_generations: u64,
    pub cells: Vec<SweepCell>,
}

impl SweepCell {
    fn from_outcomes(value: u64, outcomes: Vec<SweepOutcome>, budget: u64) -> Self {
        let mut censored: Vec<u64> = outcomes
            .iter()
            .map(|o| o.generations_to_first_solution.unwrap_or(budget))
            .collect();
        censored.sort_unstable();
        let solved = outcomes
            .iter()
            .filter(|o| o.generations_to_first_solution.is_some())
            .count();
        let mean_generations = if censored.is_empty() {
            0.0
        } else {
            censored.iter().map(|&g| g as f64).sum::<f64>() / censored.len() as f64
        };
        let median_generations = censored.get(censored.len().saturating_sub(1) / 2).copied().unwrap_or(0);
        Self {
            value,
            outcomes,
            solved,
            mean_generations,
            median_generations,
        }
    }

    pub fn success_rate(&self) -> f64 {
        if self.outcomes.is_empty() {
            0.0
        } else {
            self.solved as f64 / self.outcomes.len() as f64
        }
    }
}

/// Runs `seeds_per_value` independent searches for every value and records
/// how many generations each needed to find its first solution.
///
/// Replicate `k` of a population-size cell uses seed `base.seed + k`; for a
/// seed sweep, replicate `k` of value `s` uses seed `s + k`. Each run stops
/// at its first solution. Runs execute in parallel and are collected in
/// (value, replicate) order, so the report does not depend on scheduling.
pub fn sweep(
    eq: &DiophantineEquation,
    base: &SwarmConfig,
    variable: SweepVariable,
    values: &[u64],
    seeds_per_value: usize,
) -> Result<SweepReport, SwarmError> {
    let jobs: Vec<(usize, SwarmConfig)> = values
        .iter()
        .enumerate()
        .flat_map(|(cell, &value)| {
            (0..seeds_per_value).map(move |k| {
                let mut cfg = base.clone().with_max_solutions(1);
                match variable {
                    SweepVariable::PopulationSize => {
                        cfg.population_size = value as usize;
                        cfg.seed = base.seed.wrapping_add(k as u64);
                    }
                    SweepVariable::Seed => cfg.seed = value.wrapping_add(k as u64),
                }
                (cell, cfg)
            })
        })
        .collect();

    let outcomes: Vec<(usize, SweepOutcome)> = jobs
        .into_par_iter()
        .map(|(cell, cfg)| {
            let result = run(eq, &cfg)?;
            Ok((
                cell,
                SweepOutcome {
                    seed: cfg.seed,
                    generations_to_first_solution: result.first_solution_generation,
                },
            ))
        })
        .collect::<Result<_, SwarmError>>()?;

    let mut grouped: Vec<Vec<SweepOutcome>> = vec![Vec::new(); values.len()];
    for (cell, outcome) in outcomes {
        grouped[cell].push(outcome);
    }
    let cells = values
        .iter()
        .zip(grouped)
        .map(|(&value, outcomes)| SweepCell::from_outcomes(value, outcomes, base.max_generations))
        .collect();
    Ok(SweepReport {
        variable,
        max_generations: base.max_generations,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_statistics_censor_failures() {
        let outcomes = vec![
            SweepOutcome {
                seed: 1,
                generations_to_first_solution: Some(10),
            },
            SweepOutcome {
                seed: 2,
                generations_to_first_solution: None,
            },
            SweepOutcome {
                seed: 3,
                generations_to_first_solution: Some(30),
            },
            SweepOutcome {
                seed: 4,
                generations_to_first_solution: Some(20),
            },
        ];
        let cell = SweepCell::from_outcomes(40, outcomes, 100);
        assert_eq!(cell.solved, 3);
        assert_eq!(cell.mean_generations, 40.0);
        assert_eq!(cell.median_generations, 20);
        assert_eq!(cell.success_rate(), 0.75);
    }
}

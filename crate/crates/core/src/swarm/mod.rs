//! The integer particle swarm search loop.

mod config;
mod particle;
mod state;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equation::{DiophantineEquation, EquationError};
use crate::telemetry::RunTrace;

pub use config::{ConfigError, SignConvention, SwarmConfig};
pub use particle::{clamp_velocity, repair, round_sum, update_position, update_velocity, Particle};
pub use state::SwarmState;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwarmError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error("particle {0} is not on a solution")]
    NotASolution(usize),
    #[error("no particle with index {0}")]
    NoSuchParticle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    SolutionQuotaMet,
    GenerationBudgetExhausted,
}

impl std::fmt::Display for TerminationReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SolutionQuotaMet => "solution_quota_met",
            Self::GenerationBudgetExhausted => "generation_budget_exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// Distinct solutions in harvest order.
    pub solutions: Vec<Vec<u64>>,
    pub trace: RunTrace,
    pub termination_reason: TerminationReason,
    pub generations: u64,
    pub first_solution_generation: Option<u64>,
}

pub fn init_swarm(eq: &DiophantineEquation, cfg: &SwarmConfig) -> Result<SwarmState, SwarmError> {
    SwarmState::new(eq, cfg)
}

/// Steps the swarm until `max_solutions` distinct solutions are known or
/// `max_generations` generations have run.
pub fn run(eq: &DiophantineEquation, cfg: &SwarmConfig) -> Result<RunResult, SwarmError> {
    run_observed(eq, cfg, |_, _| {})
}

/// Like [`run`], calling `on_solution(solution, generation)` for each new
/// distinct solution as soon as it is harvested.
pub fn run_observed<F>(eq: &DiophantineEquation, cfg: &SwarmConfig, mut on_solution: F) -> Result<RunResult, SwarmError>
where
    F: FnMut(&[u64], u64),
{
    let mut state = SwarmState::new(eq, cfg)?;
    let mut reported = 0;
    let mut report = |state: &SwarmState, reported: &mut usize| {
        for s in &state.solutions()[*reported..] {
            on_solution(s, state.generation());
        }
        *reported = state.solutions().len();
    };
    report(&state, &mut reported);

    let mut records = Vec::new();
    while state.solutions().len() < cfg.max_solutions && state.generation() < cfg.max_generations {
        records.push(state.step_generation()?);
        report(&state, &mut reported);
    }

    let termination_reason = if state.solutions().len() >= cfg.max_solutions {
        TerminationReason::SolutionQuotaMet
    } else {
        TerminationReason::GenerationBudgetExhausted
    };
    let solutions = state.solutions().to_vec();
    Ok(RunResult {
        trace: RunTrace {
            config: cfg.clone(),
            equation: eq.clone(),
            records,
            solutions: solutions.clone(),
            termination_reason,
        },
        solutions,
        termination_reason,
        generations: state.generation(),
        first_solution_generation: state.first_solution_generation(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_solution_for_4500() {
        let eq = DiophantineEquation::uniform(2, 2, 4500).unwrap();
        let result = run(&eq, &SwarmConfig::default().with_seed(1)).unwrap();
        assert_eq!(result.termination_reason, TerminationReason::SolutionQuotaMet);
        assert_eq!(result.solutions.len(), 1);
        assert_eq!(eq.fitness(&result.solutions[0]), Ok(0));
    }

    #[test]
    fn unsolvable_exhausts_budget() {
        let eq = DiophantineEquation::uniform(2, 2, 3).unwrap();
        let result = run(&eq, &SwarmConfig::default().with_max_generations(200)).unwrap();
        assert!(result.solutions.is_empty());
        assert_eq!(result.termination_reason, TerminationReason::GenerationBudgetExhausted);
        assert_eq!(result.trace.records.len(), 200);
        assert_eq!(result.first_solution_generation, None);
    }

    #[test]
    fn zero_budget_has_empty_trace() {
        let eq = DiophantineEquation::uniform(2, 2, 625).unwrap();
        for seed in 0..20 {
            let cfg = SwarmConfig::default().with_seed(seed).with_max_generations(0);
            let result = run(&eq, &cfg).unwrap();
            assert!(result.trace.records.is_empty());
            assert_eq!(result.generations, 0);
            // only an initial particle landing on a solution can contribute
            assert_eq!(result.solutions.is_empty(), result.first_solution_generation.is_none());
        }
    }

    #[test]
    fn observer_sees_solutions_in_order() {
        let eq = DiophantineEquation::uniform(2, 2, 625).unwrap();
        let cfg = SwarmConfig::default().with_seed(7).with_max_solutions(4);
        let mut seen = Vec::new();
        let result = run_observed(&eq, &cfg, |s, g| seen.push((s.to_vec(), g))).unwrap();
        assert_eq!(
            seen.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
            result.solutions
        );
        assert!(seen.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(result.first_solution_generation, seen.first().map(|(_, g)| *g));
    }

    #[test]
    fn records_are_contiguous() {
        let eq = DiophantineEquation::uniform(3, 2, 244).unwrap();
        let result = run(&eq, &SwarmConfig::default().with_seed(3).with_max_generations(300)).unwrap();
        for (i, r) in result.trace.records.iter().enumerate() {
            assert_eq!(r.generation, i as u64);
        }
    }
}

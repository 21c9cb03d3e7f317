use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which way the cognitive and social differences point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `(pbest - x)` and `(gbest - x)`: particles are pulled toward their bests.
    #[default]
    Standard,
    /// `(x - pbest)` and `(x - gbest)`, the reverse orientation.
    PaperLiteral,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("coefficient {name} must be finite and non-negative, got {value}")]
    BadCoefficient { name: &'static str, value: f64 },
    #[error("max_solutions must be at least 1")]
    ZeroSolutionQuota,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    pub population_size: usize,
    /// Inertia weight on the previous velocity.
    pub c1: f64,
    /// Cognitive coefficient (pull toward the particle's own best).
    pub c2: f64,
    /// Social coefficient (pull toward the swarm best).
    pub c3: f64,
    pub max_generations: u64,
    /// Stop once this many distinct solutions are known.
    pub max_solutions: usize,
    pub seed: u64,
    pub sign_convention: SignConvention,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            population_size: 40,
            c1: 1.0,
            c2: 2.0,
            c3: 2.0,
            max_generations: 50_000,
            max_solutions: 1,
            seed: 0,
            sign_convention: SignConvention::Standard,
        }
    }
}

impl SwarmConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_population(mut self, population_size: usize) -> Self {
        self.population_size = population_size;
        self
    }

    pub fn with_max_generations(mut self, max_generations: u64) -> Self {
        self.max_generations = max_generations;
        self
    }

    pub fn with_max_solutions(mut self, max_solutions: usize) -> Self {
        self.max_solutions = max_solutions;
        self
    }

    pub fn with_sign(mut self, sign_convention: SignConvention) -> Self {
        self.sign_convention = sign_convention;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.population_size < 2 {
            return Err(ConfigError::PopulationTooSmall(self.population_size));
        }
        for (name, value) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ConfigError::BadCoefficient { name, value });
            }
        }
        if self.max_solutions == 0 {
            return Err(ConfigError::ZeroSolutionQuota);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = SwarmConfig::default();
        assert_eq!((cfg.population_size, cfg.c1, cfg.c2, cfg.c3), (40, 1.0, 2.0, 2.0));
        assert_eq!(cfg.max_solutions, 1);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        let base = SwarmConfig::default();
        assert_eq!(
            base.clone().with_population(1).validate(),
            Err(ConfigError::PopulationTooSmall(1))
        );
        let mut neg = base.clone();
        neg.c2 = -0.5;
        assert!(matches!(
            neg.validate(),
            Err(ConfigError::BadCoefficient { name: "c2", .. })
        ));
        let mut nan = base.clone();
        nan.c1 = f64::NAN;
        assert!(nan.validate().is_err());
        assert_eq!(
            base.with_max_solutions(0).validate(),
            Err(ConfigError::ZeroSolutionQuota)
        );
    }
}

use std::collections::HashSet;

use super::config::SwarmConfig;
use super::particle::{update_position, update_velocity, Particle};
use super::SwarmError;
use crate::equation::{DiophantineEquation, Fitness};
use crate::rng::SwarmRng;
use crate::telemetry::{fitness_stats, GenerationRecord};

/// Upper bound on back-to-back harvests of one particle in one pass. Only
/// reached when nearly every feasible point is a solution.
const MAX_REDRAWS: usize = 16;

/// A live swarm over one equation.
///
/// The swarm is fully connected: every particle is steered by the single
/// global best. All randomness comes from the owned [`SwarmRng`], so two
/// states built from the same equation and config evolve identically.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    equation: DiophantineEquation,
    config: SwarmConfig,
    particles: Vec<Particle>,
    gbest_index: usize,
    gbest_position: Vec<u64>,
    gbest_fitness: Fitness,
    generation: u64,
    solutions: Vec<Vec<u64>>,
    known: HashSet<Vec<u64>>,
    first_solution_generation: Option<u64>,
    rng: SwarmRng,
    particle_range: u64,
    max_range: u64,
}

impl SwarmState {
    /// Scatters `population_size` particles uniformly over the feasible box,
    /// at rest, and harvests any that already sit on a solution.
    pub fn new(equation: &DiophantineEquation, config: &SwarmConfig) -> Result<Self, SwarmError> {
        config.validate()?;
        let particle_range = equation.particle_range();
        let mut state = Self {
            equation: equation.clone(),
            config: config.clone(),
            particles: Vec::with_capacity(config.population_size),
            gbest_index: 0,
            gbest_position: Vec::new(),
            gbest_fitness: Fitness::MAX,
            generation: 0,
            solutions: Vec::new(),
            known: HashSet::new(),
            first_solution_generation: None,
            rng: SwarmRng::seed_from(config.seed),
            particle_range,
            max_range: particle_range.min(5),
        };
        for _ in 0..config.population_size {
            let p = state.fresh_particle()?;
            state.particles.push(p);
        }
        state.refresh_gbest();
        state.harvest_pass()?;
        Ok(state)
    }

    fn fresh_particle(&mut self) -> Result<Particle, SwarmError> {
        let range = self.particle_range;
        let position: Vec<u64> = (0..self.equation.arity())
            .map(|_| self.rng.uniform_inclusive(1, range))
            .collect();
        let fitness = self.equation.fitness(&position)?;
        Ok(Particle::at_rest(position, fitness))
    }

    /// Lowest pbest fitness, first index on ties.
    fn refresh_gbest(&mut self) {
        let mut best = 0;
        for (i, p) in self.particles.iter().enumerate().skip(1) {
            if p.pbest_fitness < self.particles[best].pbest_fitness {
                best = i;
            }
        }
        let p = &self.particles[best];
        self.gbest_index = best;
        self.gbest_position.clone_from(&p.pbest_position);
        self.gbest_fitness = p.pbest_fitness;
    }

    /// Harvests every particle currently on a solution, in index order.
    fn harvest_pass(&mut self) -> Result<u32, SwarmError> {
        let mut harvests = 0;
        for i in 0..self.particles.len() {
            let mut redraws = 0;
            while self.particles[i].fitness == 0 && redraws < MAX_REDRAWS {
                self.harvest_solution(i)?;
                harvests += 1;
                redraws += 1;
            }
        }
        Ok(harvests)
    }

    /// Records particle `index`'s position as a solution and replaces the
    /// particle with a fresh one at rest.
    ///
    /// Any pbest equal to a known solution is reset to its owner's current
    /// position, and gbest is recomputed, so the swarm is not drawn back to
    /// solutions it already has. Returns whether the solution was new.
    pub fn harvest_solution(&mut self, index: usize) -> Result<bool, SwarmError> {
        let particle = self.particles.get(index).ok_or(SwarmError::NoSuchParticle(index))?;
        if particle.fitness != 0 {
            return Err(SwarmError::NotASolution(index));
        }
        let found = particle.position.clone();
        let is_new = self.known.insert(found.clone());
        if is_new {
            self.solutions.push(found);
            self.first_solution_generation.get_or_insert(self.generation);
        }
        self.particles[index] = self.fresh_particle()?;
        for p in &mut self.particles {
            if p.pbest_fitness == 0 && self.known.contains(&p.pbest_position) {
                p.pbest_position.clone_from(&p.position);
                p.pbest_fitness = p.fitness;
            }
        }
        self.refresh_gbest();
        Ok(is_new)
    }

    /// Advances every particle once and returns this generation's telemetry.
    ///
    /// Particles move in index order against the gbest from the start of
    /// the generation. pbest updates need strict improvement. gbest is then
    /// recomputed, solutions are harvested, and the generation counter is
    /// incremented.
    pub fn step_generation(&mut self) -> Result<GenerationRecord, SwarmError> {
        let previous_gbest = self.gbest_position.clone();
        let gbest = self.gbest_position.clone();
        let mut velocity_delta = 0.0;
        let mut moved_fitness = Vec::with_capacity(self.particles.len());

        for i in 0..self.particles.len() {
            let rand1 = self.rng.unit();
            let rand2 = self.rng.unit();
            let p = &self.particles[i];
            let velocity = update_velocity(p, &gbest, &self.config, self.max_range, rand1, rand2);
            velocity_delta += velocity
                .iter()
                .zip(&p.velocity)
                .map(|(new, old)| (new - old).abs())
                .sum::<f64>();
            let position = update_position(&p.position, &velocity, self.particle_range);
            let fitness = self.equation.fitness(&position)?;

            let p = &mut self.particles[i];
            p.velocity = velocity;
            p.position = position;
            p.fitness = fitness;
            p.remember_if_better();
            moved_fitness.push(fitness);
        }

        self.refresh_gbest();
        self.generation += 1;
        let stats = fitness_stats(&moved_fitness).expect("population is non-empty");
        let harvests = self.harvest_pass()?;

        let coords = (self.particles.len() * self.equation.arity()) as f64;
        Ok(GenerationRecord {
            generation: self.generation - 1,
            gbest_fitness: self.gbest_fitness,
            gbest_position: self.gbest_position.clone(),
            gbest_changed: self.gbest_position != previous_gbest,
            pbest_fitness_mean: self.particles.iter().map(|p| p.pbest_fitness as f64).sum::<f64>()
                / self.particles.len() as f64,
            fitness_mean: stats.mean,
            fitness_median: stats.median,
            fitness_stddev: stats.stddev,
            velocity_update_mean_abs: velocity_delta / coords,
            harvests,
        })
    }

    /// Checks the per-state invariants: every position and pbest is
    /// feasible, every velocity component is inside `(-max_range,
    /// max_range)`, stored fitnesses are exact, gbest is the lowest pbest,
    /// and every recorded solution solves the equation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let eq = &self.equation;
        let limit = self.max_range as f64;
        for (i, p) in self.particles.iter().enumerate() {
            if !eq.is_feasible(&p.position) {
                return Err(format!("particle {i} infeasible at {:?}", p.position));
            }
            if !eq.is_feasible(&p.pbest_position) {
                return Err(format!("particle {i} pbest infeasible at {:?}", p.pbest_position));
            }
            #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
            if let Some(v) = p.velocity.iter().find(|v| !(v.abs() < limit)) {
                return Err(format!("particle {i} velocity {v} outside +/-{limit}"));
            }
            if eq.fitness(&p.position).ok() != Some(p.fitness) {
                return Err(format!("particle {i} stale fitness"));
            }
            if eq.fitness(&p.pbest_position).ok() != Some(p.pbest_fitness) {
                return Err(format!("particle {i} stale pbest fitness"));
            }
            if p.pbest_fitness > p.fitness {
                return Err(format!("particle {i} pbest worse than its position"));
            }
        }
        let best = self.particles.iter().map(|p| p.pbest_fitness).min();
        if best != Some(self.gbest_fitness) {
            return Err(format!("gbest {} is not the lowest pbest {best:?}", self.gbest_fitness));
        }
        if self.particles[self.gbest_index].pbest_position != self.gbest_position {
            return Err("gbest position does not match its owner".into());
        }
        for s in &self.solutions {
            if eq.fitness(s).ok() != Some(0) {
                return Err(format!("recorded solution {s:?} is not a solution"));
            }
        }
        Ok(())
    }

    pub fn equation(&self) -> &DiophantineEquation {
        &self.equation
    }

    pub fn config(&self) -> &SwarmConfig {
        &self.config
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn gbest_position(&self) -> &[u64] {
        &self.gbest_position
    }

    pub fn gbest_fitness(&self) -> Fitness {
        self.gbest_fitness
    }

    /// Index of the particle whose pbest is the gbest.
    pub fn gbest_index(&self) -> usize {
        self.gbest_index
    }

    /// Number of generations stepped so far.
    pub fn generation(&self) -> u64 {
        self.generation
    }

    /// Distinct solutions in the order they were harvested.
    pub fn solutions(&self) -> &[Vec<u64>] {
        &self.solutions
    }

    /// Generation count at which the first solution was harvested
    /// (0 means it was found during initialization).
    pub fn first_solution_generation(&self) -> Option<u64> {
        self.first_solution_generation
    }

    pub fn particle_range(&self) -> u64 {
        self.particle_range
    }

    pub fn max_range(&self) -> u64 {
        self.max_range
    }
}

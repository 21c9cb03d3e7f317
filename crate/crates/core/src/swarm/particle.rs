use serde::{Deserialize, Serialize};

use super::config::{SignConvention, SwarmConfig};
use crate::equation::Fitness;

/// An integer particle with a real-valued velocity and a memory of its best position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Particle {
    pub position: Vec<u64>,
    pub velocity: Vec<f64>,
    /// Fitness of `position`.
    pub fitness: Fitness,
    pub pbest_position: Vec<u64>,
    pub pbest_fitness: Fitness,
}

impl Particle {
    /// A particle at rest whose best is its starting point.
    pub fn at_rest(position: Vec<u64>, fitness: Fitness) -> Self {
        Self {
            velocity: vec![0.0; position.len()],
            pbest_position: position.clone(),
            pbest_fitness: fitness,
            position,
            fitness,
        }
    }

    /// Adopts the current position as pbest if it is strictly better.
    pub fn remember_if_better(&mut self) -> bool {
        if self.fitness < self.pbest_fitness {
            self.pbest_position.clone_from(&self.position);
            self.pbest_fitness = self.fitness;
            true
        } else {
            false
        }
    }
}

/// Velocity rule with the clamp applied.
///
/// `rand1` and `rand2` are the two uniform draws for this particle in this
/// generation; they are shared by all coordinates. Each raw component is
/// reduced by a sign-preserving remainder modulo `max_range`, so the result
/// always lies strictly inside `(-max_range, max_range)`.
pub fn update_velocity(
    particle: &Particle,
    gbest: &[u64],
    cfg: &SwarmConfig,
    max_range: u64,
    rand1: f64,
    rand2: f64,
) -> Vec<f64> {
    let orient = match cfg.sign_convention {
        SignConvention::Standard => 1.0,
        SignConvention::PaperLiteral => -1.0,
    };
    let cognitive = cfg.c2 * rand1 * orient;
    let social = cfg.c3 * rand2 * orient;
    let limit = max_range as f64;
    particle
        .velocity
        .iter()
        .zip(&particle.position)
        .zip(particle.pbest_position.iter().zip(gbest))
        .map(|((&v, &x), (&pb, &gb))| {
            let x = x as f64;
            let raw = cfg.c1 * v + cognitive * (pb as f64 - x) + social * (gb as f64 - x);
            clamp_velocity(raw, limit)
        })
        .collect()
}

/// `raw % limit` keeping the sign of `raw`; `|result| < limit`.
pub fn clamp_velocity(raw: f64, limit: f64) -> f64 {
    let r = if raw.abs() < limit { raw } else { raw % limit };
    // fold -0.0 into 0.0 so traces stay canonical
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Moves each coordinate by its velocity, rounds half away from zero and
/// repairs the result back into `[1, particle_range]`.
pub fn update_position(position: &[u64], velocity: &[f64], particle_range: u64) -> Vec<u64> {
    position
        .iter()
        .zip(velocity)
        .map(|(&x, &v)| repair(round_sum(x, v), particle_range))
        .collect()
}

/// `round(x + v)` with ties away from zero, computed without losing
/// precision on large `x`.
pub fn round_sum(x: u64, v: f64) -> i128 {
    debug_assert!(v.is_finite());
    let floor = v.floor();
    let frac = v - floor;
    let base = x as i128 + floor as i128;
    let up = if base >= 0 { frac >= 0.5 } else { frac > 0.5 };
    base + up as i128
}

/// Maps an arbitrary integer into `[1, particle_range]`: negatives are
/// reflected, values above the range are reduced modulo the range, and a
/// zero becomes `particle_range`. The rules repeat until the value is
/// feasible.
pub fn repair(mut t: i128, particle_range: u64) -> u64 {
    let range = particle_range as i128;
    loop {
        if t < 0 {
            t = -t;
        }
        if t > range {
            t %= range;
        }
        if t == 0 {
            t = range;
        }
        if (1..=range).contains(&t) {
            return t as u64;
        }
    }
}

//! Seeded random source shared by every stochastic part of the solver.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (the
//! `rand_xoshiro` reference seeding). Integers are drawn by rejection
//! sampling and reals from the top 53 bits, so a seed reproduces the same
//! stream on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwarmRng {
    inner: Xoshiro256PlusPlus,
}

impl SwarmRng {
    pub fn seed_from(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[lo, hi]`, without modulo bias.
    pub fn uniform_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        let span = hi - lo;
        if span == u64::MAX {
            return self.next_u64();
        }
        let n = span + 1;
        // largest multiple of n that fits, exclusive
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return lo + x % n;
            }
        }
    }
}

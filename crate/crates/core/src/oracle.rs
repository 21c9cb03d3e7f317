//! Exhaustive enumeration of the feasible box, used as ground truth.

use serde::{Deserialize, Serialize};

use crate::equation::DiophantineEquation;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Lexicographically sorted, duplicate-free.
    pub solutions: Vec<Vec<u64>>,
    /// `particle_range^n`, saturating at `u128::MAX`.
    pub search_space_size: u128,
    /// True iff the whole box was covered; only then is `solutions` complete.
    pub exhausted: bool,
    /// Candidate evaluations spent.
    pub evaluations: u64,
}

struct Scan<'a> {
    eq: &'a DiophantineEquation,
    range: u64,
    /// `tail_min[i]` = smallest possible value of terms `i..`.
    tail_min: Vec<u128>,
    budget: u64,
    evaluations: u64,
    prefix: Vec<u64>,
    solutions: Vec<Vec<u64>>,
}

impl Scan<'_> {
    /// Returns false once the budget runs out.
    fn descend(&mut self, index: usize, partial: u128) -> bool {
        let target = self.eq.target();
        let last = index + 1 == self.eq.arity();
        for x in 1..=self.range {
            if self.evaluations == self.budget {
                return false;
            }
            self.evaluations += 1;
            // terms are increasing in x, so once the prefix overshoots no larger x can help
            let sum = match self.eq.term_value(index, x).and_then(|v| partial.checked_add(v)) {
                Some(s) if s.saturating_add(self.tail_min[index + 1]) <= target => s,
                _ => break,
            };
            self.prefix.push(x);
            let ok = if last {
                if sum == target {
                    self.solutions.push(self.prefix.clone());
                }
                true
            } else {
                self.descend(index + 1, sum)
            };
            self.prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Lexicographic scan of `[1, particle_range]^n`, abandoning a prefix as
/// soon as its partial sum (plus the least the remaining terms can add)
/// exceeds `N`. At most `budget` candidate evaluations are spent.
pub fn enumerate_solutions(eq: &DiophantineEquation, budget: u64) -> OracleResult {
    let n = eq.arity();
    let mut tail_min = vec![0u128; n + 1];
    for i in (0..n).rev() {
        tail_min[i] = tail_min[i + 1].saturating_add(eq.terms()[i].coefficient as u128);
    }
    let range = eq.particle_range();
    let mut scan = Scan {
        eq,
        range,
        tail_min,
        budget,
        evaluations: 0,
        prefix: Vec::with_capacity(n),
        solutions: Vec::new(),
    };
    let exhausted = scan.descend(0, 0);
    let search_space_size = u32::try_from(n)
        .ok()
        .and_then(|n| (range as u128).checked_pow(n))
        .unwrap_or(u128::MAX);
    OracleResult {
        solutions: scan.solutions,
        search_space_size,
        exhausted,
        evaluations: scan.evaluations,
    }
}

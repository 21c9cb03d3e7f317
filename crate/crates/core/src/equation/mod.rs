//! Exact model of equations of the form `a_1*x_1^p_1 + ... + a_n*x_n^p_n = N`.
//!
//! All evaluation is done in `u128` with checked arithmetic. Construction
//! rejects any equation whose largest value over the feasible box
//! `[1, particle_range]^n` would not fit, so fitness values of feasible
//! positions are always exact.

mod parse;
mod root;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_equation, ParseError};
pub use root::{checked_pow, integer_nth_root};

/// Fitness of a position: `|N - lhs|`.
pub type Fitness = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("equation needs at least one term")]
    NoTerms,
    #[error("term {index}: coefficient must be >= 1")]
    InvalidCoefficient { index: usize },
    #[error("term {index}: power must be >= 1")]
    InvalidPower { index: usize },
    #[error("target N must be >= 1")]
    InvalidTarget,
    #[error("position has {got} coordinates, equation has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arithmetic overflow evaluating the equation")]
    Overflow,
    #[error("particle range {0} does not fit a 64-bit coordinate")]
    RangeTooLarge(u128),
}

/// One summand `a * x^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "a")]
    pub coefficient: u64,
    #[serde(rename = "p")]
    pub power: u32,
}

impl Term {
    pub fn new(coefficient: u64, power: u32) -> Self {
        Self { coefficient, power }
    }

    fn value(&self, x: u64) -> Option<u128> {
        checked_pow(x as u128, self.power)?.checked_mul(self.coefficient as u128)
    }
}

#[derive(Serialize, Deserialize)]
struct EquationRepr {
    terms: Vec<Term>,
    #[serde(rename = "N")]
    target: u128,
}

/// A validated power-sum Diophantine equation.
///
/// Invariants: at least one term, every coefficient and power is positive,
/// `target >= 1`, and `Σ a_i * particle_range^p_i` fits in a `u128`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EquationRepr", into = "EquationRepr")]
pub struct DiophantineEquation {
    terms: Vec<Term>,
    target: u128,
    min_power: u32,
    particle_range: u64,
}

impl TryFrom<EquationRepr> for DiophantineEquation {
    type Error = EquationError;
    fn try_from(repr: EquationRepr) -> Result<Self, Self::Error> {
        Self::new(repr.terms, repr.target)
    }
}

impl From<DiophantineEquation> for EquationRepr {
    fn from(eq: DiophantineEquation) -> Self {
        EquationRepr {
            terms: eq.terms,
            target: eq.target,
        }
    }
}

impl DiophantineEquation {
    pub fn new(terms: Vec<Term>, target: u128) -> Result<Self, EquationError> {
        if terms.is_empty() {
            return Err(EquationError::NoTerms);
        }
        for (index, t) in terms.iter().enumerate() {
            if t.coefficient == 0 {
                return Err(EquationError::InvalidCoefficient { index });
            }
            if t.power == 0 {
                return Err(EquationError::InvalidPower { index });
            }
        }
        if target == 0 {
            return Err(EquationError::InvalidTarget);
        }
        let min_power = terms.iter().map(|t| t.power).min().unwrap_or(1);
        let range = integer_nth_root(target, min_power);
        let particle_range = u64::try_from(range).map_err(|_| EquationError::RangeTooLarge(range))?;
        let eq = Self {
            terms,
            target,
            min_power,
            particle_range,
        };
        // the corner of the feasible box is the largest feasible value
        eq.evaluate(&vec![particle_range; eq.arity()])?;
        Ok(eq)
    }

    /// Builds `x_1^p + ... + x_n^p = target`.
    pub fn uniform(arity: usize, power: u32, target: u128) -> Result<Self, EquationError> {
        Self::new(vec![Term::new(1, power); arity], target)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of variables `n`.
    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    pub fn target(&self) -> u128 {
        self.target
    }

    pub fn min_power(&self) -> u32 {
        self.min_power
    }

    /// `⌊N^(1/p_r)⌋` with `p_r` the smallest power; feasible coordinates are
    /// `1..=particle_range`.
    pub fn particle_range(&self) -> u64 {
        self.particle_range
    }

    /// Exact left-hand side `Σ a_i * pos_i^p_i`.
    pub fn evaluate(&self, pos: &[u64]) -> Result<u128, EquationError> {
        if pos.len() != self.terms.len() {
            return Err(EquationError::ArityMismatch {
                expected: self.terms.len(),
                got: pos.len(),
            });
        }
        self.terms.iter().zip(pos).try_fold(0u128, |acc, (t, &x)| {
            t.value(x)
                .and_then(|v| acc.checked_add(v))
                .ok_or(EquationError::Overflow)
        })
    }

    pub fn fitness(&self, pos: &[u64]) -> Result<Fitness, EquationError> {
        Ok(self.evaluate(pos)?.abs_diff(self.target))
    }

    pub fn is_solution(&self, pos: &[u64]) -> Result<bool, EquationError> {
        Ok(self.fitness(pos)? == 0)
    }

    /// True when every coordinate lies in `[1, particle_range]`.
    pub fn is_feasible(&self, pos: &[u64]) -> bool {
        pos.len() == self.arity() && pos.iter().all(|&x| (1..=self.particle_range).contains(&x))
    }

    /// Value of the single term `index` at coordinate `x`.
    pub(crate) fn term_value(&self, index: usize, x: u64) -> Option<u128> {
        self.terms[index].value(x)
    }
}

/// Canonical text form, e.g. `2*x1^2 + 6*x2^3 + x3^2 = 1825`.
impl fmt::Display for DiophantineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.coefficient != 1 {
                write!(f, "{}*", t.coefficient)?;
            }
            write!(f, "x{}^{}", i + 1, t.power)?;
        }
        write!(f, " = {}", self.target)
    }
}

impl std::str::FromStr for DiophantineEquation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_equation(s)
    }
}

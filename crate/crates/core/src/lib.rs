//! Integer particle swarm search for solutions of
//! `a_1*x_1^p_1 + ... + a_n*x_n^p_n = N` in positive integers.
//!
//! * [`equation`]: exact evaluation, fitness and the feasible box.
//! * [`swarm`]: the search loop with pbest/gbest bookkeeping, velocity
//!   clamping, position repair and solution harvesting.
//! * [`oracle`]: brute-force enumeration for checking results.
//! * [`telemetry`]: per-generation records, CSV/JSON export and sweeps.

pub mod equation;
pub mod oracle;
pub mod rng;
pub mod swarm;
pub mod telemetry;

pub use equation::{parse_equation, DiophantineEquation, EquationError, Fitness, ParseError, Term};
pub use oracle::{enumerate_solutions, OracleResult};
pub use swarm::{run, run_observed, RunResult, SignConvention, SwarmConfig, SwarmError, SwarmState, TerminationReason};
pub use telemetry::{GenerationRecord, RunTrace};

//! Evolutionary optimization for multi-objective problems whose number of
//! objectives changes over time.
//!
//! The centerpiece is [`dtaea`], a two-archive algorithm that keeps a
//! convergence archive and a diversity archive and rebuilds both whenever
//! the objective count grows or shrinks. Around it sit the dynamic benchmark
//! problems ([`problems`]), the comparison algorithms ([`baselines`]), the
//! quality indicators ([`metrics`]) and an experiment driver ([`harness`]).

pub mod algorithm;
pub mod baselines;
pub mod decomposition;
pub mod dtaea;
mod error;
pub mod harness;
pub mod metrics;
pub mod pareto;
pub mod problems;
pub mod variation;

pub use error::{Error, Result};
pub use pareto::{ObjectiveBounds, Solution};
pub use problems::{ChangeSchedule, DynamicProblem, Environment, ProblemId};

/// Random generator used by every run. Seeded per run for deterministic replay.
pub type RunRng = rand_chacha::ChaCha8Rng;

/// Builds the run generator for `seed`.
pub fn seeded_rng(seed: u64) -> RunRng {
    use rand::SeedableRng;
    RunRng::seed_from_u64(seed)
}

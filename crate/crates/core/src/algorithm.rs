use crate::error::Result;
use crate::pareto::Solution;
use crate::problems::{DynamicProblem, Environment};
use crate::RunRng;

/// Common driving surface for every optimizer the harness can run.
pub trait DynamicOptimizer {
    /// One generation in an unchanged environment.
    fn step(&mut self, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng);

    /// Reacts to a change of the objective count from `previous_m` to `env.m`.
    fn on_change(
        &mut self,
        problem: &DynamicProblem,
        env: &Environment,
        previous_m: usize,
        rng: &mut RunRng,
    ) -> Result<()>;

    /// Reacts to a change of the drift clock alone (F5/F6). Populations must
    /// be re-evaluated at minimum.
    fn on_drift(&mut self, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng);

    /// The population reported to the metrics.
    fn output(&self) -> &[Solution];
}

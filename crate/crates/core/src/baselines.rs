//! Comparison algorithms: NSGA-II, its random-injection dynamic variant
//! DNSGA-II, and MOEA/D with DE reproduction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::algorithm::DynamicOptimizer;
use crate::decomposition::{generate_weights, tchebycheff, WeightSet};
use crate::error::{Error, Result};
use crate::pareto::{sort_objectives, Solution};
use crate::problems::{DynamicProblem, Environment};
use crate::variation::{de_rand_1_bin, polynomial_mutation, sbx, VariationParams};
use crate::RunRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineAlgo {
    Nsga2,
    Dnsga2,
    Moead,
}

impl fmt::Display for BaselineAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineAlgo::Nsga2 => "nsga2",
            BaselineAlgo::Dnsga2 => "dnsga2",
            BaselineAlgo::Moead => "moead",
        })
    }
}

impl FromStr for BaselineAlgo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nsga2" => Ok(BaselineAlgo::Nsga2),
            "dnsga2" => Ok(BaselineAlgo::Dnsga2),
            "moead" => Ok(BaselineAlgo::Moead),
            other => Err(Error::Config(format!("unknown baseline `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub algo: BaselineAlgo,
    pub n_pop: usize,
    /// Fraction of the population replaced on change (DNSGA-II).
    pub injection_fraction: f64,
    /// Neighbourhood size T (MOEA/D).
    pub neighborhood: usize,
    /// Maximum replacements per offspring (MOEA/D).
    pub replacement_cap: usize,
    pub variation: VariationParams,
}

impl BaselineConfig {
    pub fn new(algo: BaselineAlgo, n_pop: usize) -> Self {
        Self {
            algo,
            n_pop,
            injection_fraction: 0.2,
            neighborhood: 20,
            replacement_cap: 2,
            variation: VariationParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pop < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        if !(self.injection_fraction > 0.0 && self.injection_fraction <= 1.0) {
            return Err(Error::Config("injection fraction must lie in (0, 1]".into()));
        }
        if self.neighborhood < 2 {
            return Err(Error::Config("neighbourhood size must be at least 2".into()));
        }
        self.variation.validate()
    }
}

fn random_solution(problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) -> Solution {
    let x = (0..problem.n).map(|_| rng.random::<f64>()).collect();
    problem.solution_unchecked(x, env)
}

/// Crowding distance of every member of one front. Boundary members of each
/// objective get infinity.
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = front[0].as_ref().len();
    let mut order: Vec<usize> = (0..n).collect();
    for j in 0..m {
        let val = |i: usize| front[i].as_ref()[j];
        order.sort_by(|&a, &b| val(a).total_cmp(&val(b)).then(a.cmp(&b)));
        let (lo, hi) = (val(order[0]), val(order[n - 1]));
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for k in 1..n.saturating_sub(1) {
            dist[order[k]] += (val(order[k + 1]) - val(order[k - 1])) / range;
        }
    }
    dist
}

/// Non-domination rank (0 = best) and crowding distance for each member.
pub fn rank_and_crowding<V: AsRef<[f64]>>(objs: &[V]) -> (Vec<usize>, Vec<f64>) {
    let mut rank = vec![0; objs.len()];
    let mut crowd = vec![0.0; objs.len()];
    for (r, level) in sort_objectives(objs).into_iter().enumerate() {
        let front: Vec<&[f64]> = level.iter().map(|&i| objs[i].as_ref()).collect();
        for (&i, d) in level.iter().zip(crowding_distance(&front)) {
            rank[i] = r;
            crowd[i] = d;
        }
    }
    (rank, crowd)
}

/// Elitist survival: whole fronts in order, the last one cut by descending
/// crowding distance (ties to the lower index). Returns ascending indices.
pub fn nsga2_survival<V: AsRef<[f64]>>(objs: &[V], n: usize) -> Vec<usize> {
    let mut kept = Vec::with_capacity(n);
    for level in sort_objectives(objs) {
        if kept.len() + level.len() <= n {
            kept.extend(level);
            if kept.len() == n {
                break;
            }
            continue;
        }
        let front: Vec<&[f64]> = level.iter().map(|&i| objs[i].as_ref()).collect();
        let crowd = crowding_distance(&front);
        let mut order: Vec<usize> = (0..level.len()).collect();
        order.sort_by(|&a, &b| crowd[b].total_cmp(&crowd[a]).then(a.cmp(&b)));
        let need = n - kept.len();
        kept.extend(order[..need].iter().map(|&k| level[k]));
        break;
    }
    kept.sort_unstable();
    kept
}

fn crowded_tournament(rank: &[usize], crowd: &[f64], rng: &mut RunRng) -> usize {
    let a = rng.random_range(0..rank.len());
    let b = rng.random_range(0..rank.len());
    match rank[a].cmp(&rank[b]).then(crowd[b].total_cmp(&crowd[a])) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if rng.random::<bool>() {
                a
            } else {
                b
            }
        }
    }
}

/// One NSGA-II generation: crowded binary tournament, SBX and polynomial
/// mutation, then (μ+λ) survival.
pub fn nsga2_generation(
    pop: &[Solution],
    problem: &DynamicProblem,
    env: &Environment,
    variation: &VariationParams,
    rng: &mut RunRng,
) -> Vec<Solution> {
    let n = pop.len();
    let objs: Vec<&[f64]> = pop.iter().map(|s| s.f.as_slice()).collect();
    let (rank, crowd) = rank_and_crowding(&objs);
    let mut offspring = Vec::with_capacity(n);
    while offspring.len() < n {
        let p1 = &pop[crowded_tournament(&rank, &crowd, rng)];
        let p2 = &pop[crowded_tournament(&rank, &crowd, rng)];
        let (c1, c2) = sbx(&p1.x, &p2.x, variation, rng);
        for c in [c1, c2] {
            if offspring.len() < n {
                let x = polynomial_mutation(&c, variation, rng);
                offspring.push(problem.solution_unchecked(x, env));
            }
        }
    }
    let combined: Vec<Solution> = pop.iter().cloned().chain(offspring).collect();
    let objs: Vec<&[f64]> = combined.iter().map(|s| s.f.as_slice()).collect();
    nsga2_survival(&objs, n).into_iter().map(|i| combined[i].clone()).collect()
}

/// Number of members DNSGA-II replaces on change.
pub fn injection_count(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64).ceil() as usize).clamp(1, n)
}

/// DNSGA-II change response: re-evaluate everything, then replace
/// ⌈fraction·N⌉ uniformly chosen members with random solutions.
pub fn dnsga2_on_change(
    pop: &[Solution],
    problem: &DynamicProblem,
    env: &Environment,
    fraction: f64,
    rng: &mut RunRng,
) -> Vec<Solution> {
    let mut next: Vec<Solution> = pop.iter().map(|s| problem.reevaluate(s, env)).collect();
    let count = injection_count(pop.len(), fraction);
    for i in index::sample(rng, pop.len(), count).into_vec() {
        next[i] = random_solution(problem, env, rng);
    }
    next
}

/// Indices of the `t` weight vectors nearest to each weight (itself first).
pub fn neighborhoods(weights: &WeightSet, t: usize) -> Vec<Vec<usize>> {
    let t = t.min(weights.len());
    weights
        .vectors
        .iter()
        .map(|wi| {
            let mut d: Vec<(f64, usize)> = weights
                .vectors
                .iter()
                .enumerate()
                .map(|(j, wj)| (wi.iter().zip(wj).map(|(a, b)| (a - b).powi(2)).sum::<f64>(), j))
                .collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d[..t].iter().map(|&(_, j)| j).collect()
        })
        .collect()
}

/// MOEA/D state: one solution per weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MoeadState {
    pub pop: Vec<Solution>,
    pub weights: WeightSet,
    pub neighborhoods: Vec<Vec<usize>>,
    pub ideal: Vec<f64>,
}

fn ideal_of(pop: &[Solution]) -> Vec<f64> {
    let m = pop[0].f.len();
    (0..m)
        .map(|j| pop.iter().map(|s| s.f[j]).fold(f64::INFINITY, f64::min))
        .collect()
}

/// Offers `trial` to the subproblems in `candidates` (in the given order),
/// replacing at most `cap` whose scalarized value the trial improves.
pub fn moead_replace(state: &mut MoeadState, trial: &Solution, candidates: &[usize], cap: usize) -> usize {
    let mut replaced = 0;
    for &j in candidates {
        if replaced >= cap {
            break;
        }
        let w = &state.weights.vectors[j];
        if tchebycheff(&trial.f, w, &state.ideal) < tchebycheff(&state.pop[j].f, w, &state.ideal) {
            state.pop[j] = trial.clone();
            replaced += 1;
        }
    }
    replaced
}

/// One MOEA/D generation over all subproblems in index order.
pub fn moead_generation(
    state: &mut MoeadState,
    problem: &DynamicProblem,
    env: &Environment,
    variation: &VariationParams,
    cap: usize,
    rng: &mut RunRng,
) {
    for i in 0..state.pop.len() {
        let hood = &state.neighborhoods[i];
        let picks = index::sample(rng, hood.len(), 3.min(hood.len())).into_vec();
        let parent = |k: usize| &state.pop[hood[picks[k % picks.len()]]].x;
        let x = de_rand_1_bin(&state.pop[i].x, parent(0), parent(1), parent(2), variation, rng);
        let x = polynomial_mutation(&x, variation, rng);
        let trial = problem.solution_unchecked(x, env);
        for (z, &v) in state.ideal.iter_mut().zip(&trial.f) {
            *z = z.min(v);
        }
        let mut order = state.neighborhoods[i].clone();
        order.shuffle(rng);
        moead_replace(state, &trial, &order, cap);
    }
}

/// A running baseline algorithm.
#[derive(Debug, Clone)]
pub struct Baseline {
    pub config: BaselineConfig,
    pub pop: Vec<Solution>,
    pub moead: Option<MoeadState>,
}

impl Baseline {
    pub fn new(config: BaselineConfig, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) -> Result<Self> {
        config.validate()?;
        if config.algo == BaselineAlgo::Moead {
            let weights = generate_weights(env.m)?;
            let pop: Vec<Solution> = (0..weights.len()).map(|_| random_solution(problem, env, rng)).collect();
            let state = MoeadState {
                ideal: ideal_of(&pop),
                neighborhoods: neighborhoods(&weights, config.neighborhood),
                weights,
                pop,
            };
            return Ok(Self { config, pop: Vec::new(), moead: Some(state) });
        }
        let pop = (0..config.n_pop).map(|_| random_solution(problem, env, rng)).collect();
        Ok(Self { config, pop, moead: None })
    }
}

/// Change hook shared by the baselines. NSGA-II and MOEA/D only re-evaluate;
/// DNSGA-II injects random members; MOEA/D also rebuilds its weights,
/// neighbourhoods and ideal point, resizing the population to the new
/// weight count.
pub fn baseline_on_change(
    baseline: &mut Baseline,
    problem: &DynamicProblem,
    env: &Environment,
    rng: &mut RunRng,
) -> Result<()> {
    match baseline.config.algo {
        BaselineAlgo::Nsga2 => {
            baseline.pop = baseline.pop.iter().map(|s| problem.reevaluate(s, env)).collect();
        }
        BaselineAlgo::Dnsga2 => {
            baseline.pop = dnsga2_on_change(&baseline.pop, problem, env, baseline.config.injection_fraction, rng);
        }
        BaselineAlgo::Moead => {
            let state = baseline.moead.as_mut().expect("MOEA/D state");
            let weights = generate_weights(env.m)?;
            let old: Vec<Solution> = state.pop.iter().map(|s| problem.reevaluate(s, env)).collect();
            state.pop = (0..weights.len()).map(|i| old[i % old.len()].clone()).collect();
            state.ideal = ideal_of(&state.pop);
            state.neighborhoods = neighborhoods(&weights, baseline.config.neighborhood);
            state.weights = weights;
        }
    }
    Ok(())
}

impl DynamicOptimizer for Baseline {
    fn step(&mut self, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) {
        match &mut self.moead {
            Some(state) => moead_generation(
                state,
                problem,
                env,
                &self.config.variation,
                self.config.replacement_cap,
                rng,
            ),
            None => self.pop = nsga2_generation(&self.pop, problem, env, &self.config.variation, rng),
        }
    }

    fn on_change(
        &mut self,
        problem: &DynamicProblem,
        env: &Environment,
        _previous_m: usize,
        rng: &mut RunRng,
    ) -> Result<()> {
        baseline_on_change(self, problem, env, rng)
    }

    fn on_drift(&mut self, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) {
        match self.config.algo {
            BaselineAlgo::Dnsga2 => {
                self.pop = dnsga2_on_change(&self.pop, problem, env, self.config.injection_fraction, rng);
            }
            BaselineAlgo::Nsga2 => {
                self.pop = self.pop.iter().map(|s| problem.reevaluate(s, env)).collect();
            }
            BaselineAlgo::Moead => {
                let state = self.moead.as_mut().expect("MOEA/D state");
                state.pop = state.pop.iter().map(|s| problem.reevaluate(s, env)).collect();
                state.ideal = ideal_of(&state.pop);
            }
        }
    }

    fn output(&self) -> &[Solution] {
        match &self.moead {
            Some(state) => &state.pop,
            None => &self.pop,
        }
    }
}

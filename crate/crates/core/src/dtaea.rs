//! Dynamic two-archive evolutionary algorithm.
//!
//! Two archives of equal capacity `N` co-evolve. The convergence archive (CA)
//! is updated by non-dominated sorting followed by density-based truncation;
//! the diversity archive (DA) is filled preferentially from subspaces the CA
//! leaves under-populated. Parents are drawn from the CA, with the second one
//! coming from the DA whenever the CA covers the subspaces poorly. When the
//! number of objectives changes both archives are rebuilt: on an increase the
//! CA is kept and the DA is resampled by Latin hypercube; on a decrease the CA
//! keeps its non-dominated members (topped up with mutants) and the DA keeps
//! the dominated remainder (topped up with samples).

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::algorithm::DynamicOptimizer;
use crate::decomposition::{self, associate_objectives, normalize, tchebycheff, weights_for_population, WeightSet};
use crate::error::{Error, Result};
use crate::pareto::{bounds_of_objectives, non_dominated_indices, sort_objectives, ObjectiveBounds, Solution};
use crate::problems::{DynamicProblem, Environment};
use crate::variation::{self, binary_tournament_by_density, lhs_sample, polynomial_mutation, sbx, VariationParams};
use crate::RunRng;

/// Full algorithm or one of the ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    /// No restricted mating: second parent always from the DA.
    V1,
    /// No reconstruction on change.
    V2,
    /// Neither restricted mating nor reconstruction.
    V3,
}

impl Variant {
    pub fn restricted_mating(self) -> bool {
        matches!(self, Variant::Full | Variant::V2)
    }

    pub fn reconstructs(self) -> bool {
        matches!(self, Variant::Full | Variant::V1)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "dtaea",
            Variant::V1 => "dtaea-v1",
            Variant::V2 => "dtaea-v2",
            Variant::V3 => "dtaea-v3",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dtaea" | "full" => Ok(Variant::Full),
            "dtaea-v1" | "v1" => Ok(Variant::V1),
            "dtaea-v2" | "v2" => Ok(Variant::V2),
            "dtaea-v3" | "v3" => Ok(Variant::V3),
            other => Err(Error::Config(format!("unknown DTAEA variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DtaeaConfig {
    pub n_pop: usize,
    pub variant: Variant,
    pub variation: VariationParams,
}

impl DtaeaConfig {
    pub fn new(n_pop: usize, variant: Variant) -> Self {
        Self { n_pop, variant, variation: VariationParams::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pop < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        self.variation.validate()
    }
}

/// The two archives and the weight vectors of the current environment.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchivePair {
    pub ca: Vec<Solution>,
    pub da: Vec<Solution>,
    pub weights: WeightSet,
}

fn objectives(pop: &[Solution]) -> Vec<&[f64]> {
    pop.iter().map(|s| s.f.as_slice()).collect()
}

fn bounds_of(pops: &[&[Solution]]) -> ObjectiveBounds {
    let objs: Vec<&[f64]> = pops.iter().flat_map(|p| p.iter().map(|s| s.f.as_slice())).collect();
    bounds_of_objectives(&objs).expect("archives are never empty")
}

fn sample_lhs(count: usize, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) -> Vec<Solution> {
    lhs_sample(count, problem.n, rng)
        .into_iter()
        .map(|x| problem.solution_unchecked(x, env))
        .collect()
}

/// Initial archives: uniformly random CA, Latin hypercube DA.
pub fn initialize(
    n_pop: usize,
    problem: &DynamicProblem,
    env: &Environment,
    rng: &mut RunRng,
) -> Result<ArchivePair> {
    let weights = weights_for_population(env.m, n_pop)?;
    let ca = (0..n_pop)
        .map(|_| {
            let x = (0..problem.n).map(|_| rng.random::<f64>()).collect();
            problem.solution_unchecked(x, env)
        })
        .collect();
    let da = sample_lhs(n_pop, problem, env, rng);
    Ok(ArchivePair { ca, da, weights })
}

/// Rebuild after the objective count grew: the CA keeps its decision vectors
/// and the DA is replaced by a fresh Latin hypercube sample.
pub fn reconstruct_increase(
    prev_ca: &[Solution],
    problem: &DynamicProblem,
    env: &Environment,
    rng: &mut RunRng,
) -> Result<ArchivePair> {
    let weights = weights_for_population(env.m, prev_ca.len())?;
    let ca = prev_ca.iter().map(|s| problem.reevaluate(s, env)).collect();
    let da = sample_lhs(prev_ca.len(), problem, env, rng);
    Ok(ArchivePair { ca, da, weights })
}

/// Rebuild after the objective count shrank.
///
/// The re-evaluated non-dominated members form the CA, which is topped up
/// with polynomial mutants of tournament-selected members; the dominated
/// remainder forms the DA, topped up with Latin hypercube samples.
pub fn reconstruct_decrease(
    prev_ca: &[Solution],
    problem: &DynamicProblem,
    env: &Environment,
    variation: &VariationParams,
    rng: &mut RunRng,
) -> Result<ArchivePair> {
    let n = prev_ca.len();
    let weights = weights_for_population(env.m, n)?;
    let pop: Vec<Solution> = prev_ca.iter().map(|s| problem.reevaluate(s, env)).collect();
    let nd = non_dominated_indices(&objectives(&pop));
    let mut is_nd = vec![false; n];
    nd.iter().for_each(|&i| is_nd[i] = true);
    let mut ca: Vec<Solution> = nd.iter().map(|&i| pop[i].clone()).collect();
    let mut da: Vec<Solution> = (0..n).filter(|&i| !is_nd[i]).map(|i| pop[i].clone()).collect();

    if ca.len() > n {
        let bounds = bounds_of(&[&ca]);
        ca = update_ca(&ca, &[], n, &weights, &bounds);
    }

    if ca.len() < n {
        let parents = ca.len();
        let bounds = bounds_of(&[&ca]);
        let assoc = associate_objectives(&objectives(&ca), &weights, &bounds);
        let mut counts: Vec<usize> = assoc.members.iter().map(Vec::len).collect();
        let parent_subspace = assoc.subspace_of;
        while ca.len() < n {
            let density: Vec<usize> = parent_subspace.iter().map(|&k| counts[k]).collect();
            let pick = binary_tournament_by_density(&density, rng)?;
            let x = polynomial_mutation(&ca[pick].x, variation, rng);
            let mutant = problem.solution_unchecked(x, env);
            counts[decomposition::nearest_subspace(&normalize(&mutant.f, &bounds), &weights)] += 1;
            ca.push(mutant);
        }
        debug_assert!(parents >= 1);
    }

    if da.len() < n {
        let fill = n - da.len();
        da.extend(sample_lhs(fill, problem, env, rng));
    }
    da.truncate(n);
    Ok(ArchivePair { ca, da, weights })
}

/// One removal performed by the density-based truncation of the CA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    /// Index into `ca ++ offspring`.
    pub index: usize,
    pub subspace: usize,
    /// Density of that subspace just before the removal.
    pub density: usize,
}

/// CA update with a log of the truncation steps.
pub fn update_ca_logged(
    ca: &[Solution],
    offspring: &[Solution],
    n: usize,
    weights: &WeightSet,
    bounds: &ObjectiveBounds,
) -> (Vec<Solution>, Vec<Removal>) {
    let pool: Vec<&Solution> = ca.iter().chain(offspring).collect();
    let objs: Vec<&[f64]> = pool.iter().map(|s| s.f.as_slice()).collect();
    let mut selected = Vec::with_capacity(pool.len());
    for level in sort_objectives(&objs) {
        if selected.len() >= n {
            break;
        }
        selected.extend(level);
    }
    selected.sort_unstable();
    let mut log = Vec::new();

    if selected.len() > n {
        let sel_objs: Vec<&[f64]> = selected.iter().map(|&i| objs[i]).collect();
        let assoc = associate_objectives(&sel_objs, weights, bounds);
        let mut members: Vec<Vec<usize>> = assoc
            .members
            .iter()
            .map(|m| m.iter().map(|&j| selected[j]).collect())
            .collect();
        let mut alive = selected.len();
        while alive > n {
            let (crowded, density) = members
                .iter()
                .enumerate()
                .fold((0, 0), |best, (i, m)| if m.len() > best.1 { (i, m.len()) } else { best });
            let w = &weights.vectors[crowded];
            let (pos, &worst) = members[crowded]
                .iter()
                .enumerate()
                .fold(None, |best: Option<(usize, &usize, f64)>, (pos, idx)| {
                    let g = tchebycheff(objs[*idx], w, &bounds.ideal);
                    match best {
                        Some((_, _, bg)) if g <= bg => best,
                        _ => Some((pos, idx, g)),
                    }
                })
                .map(|(p, i, _)| (p, i))
                .expect("most crowded subspace is non-empty");
            members[crowded].remove(pos);
            log.push(Removal { index: worst, subspace: crowded, density });
            alive -= 1;
        }
        let mut kept: Vec<usize> = members.into_iter().flatten().collect();
        kept.sort_unstable();
        selected = kept;
    }
    (selected.into_iter().map(|i| pool[i].clone()).collect(), log)
}

/// New CA from the union of CA and offspring: non-domination levels fill it
/// in order; overflow is trimmed one worst solution at a time from the most
/// crowded subspace.
pub fn update_ca(
    ca: &[Solution],
    offspring: &[Solution],
    n: usize,
    weights: &WeightSet,
    bounds: &ObjectiveBounds,
) -> Vec<Solution> {
    update_ca_logged(ca, offspring, n, weights, bounds).0
}

/// New DA from the union of DA and offspring, favouring subspaces where the
/// up-to-date CA has few members.
pub fn update_da(
    ca_new: &[Solution],
    da: &[Solution],
    offspring: &[Solution],
    n: usize,
    weights: &WeightSet,
    bounds: &ObjectiveBounds,
) -> Vec<Solution> {
    let pool: Vec<&Solution> = da.iter().chain(offspring).collect();
    let objs: Vec<&[f64]> = pool.iter().map(|s| s.f.as_slice()).collect();
    let mut remaining = associate_objectives(&objs, weights, bounds).members;
    let ca_count: Vec<usize> = associate_objectives(&objectives(ca_new), weights, bounds)
        .members
        .iter()
        .map(Vec::len)
        .collect();
    let target = n.min(pool.len());
    debug_assert!(pool.len() >= n, "DA update needs at least N candidates");
    let mut chosen = Vec::with_capacity(target);
    let mut itr = 1;
    while chosen.len() < target {
        let mut added = false;
        for i in 0..weights.len() {
            if remaining[i].is_empty() || ca_count[i] >= itr {
                continue;
            }
            let local: Vec<&[f64]> = remaining[i].iter().map(|&j| objs[j]).collect();
            let w = &weights.vectors[i];
            let best_pos = non_dominated_indices(&local)
                .into_iter()
                .map(|p| (p, tchebycheff(local[p], w, &bounds.ideal)))
                .fold(None, |best: Option<(usize, f64)>, (p, g)| match best {
                    Some((_, bg)) if g >= bg => best,
                    _ => Some((p, g)),
                })
                .map(|(p, _)| p)
                .expect("non-empty subspace has a non-dominated member");
            chosen.push(remaining[i].remove(best_pos));
            added = true;
            if chosen.len() == target {
                break;
            }
        }
        if added {
            itr += 1;
        } else {
            // skip iterations that cannot add anything
            itr = (0..weights.len())
                .filter(|&i| !remaining[i].is_empty())
                .map(|i| ca_count[i] + 1)
                .min()
                .expect("fewer candidates than the target would have ended the loop");
        }
    }
    chosen.into_iter().map(|i| pool[i].clone()).collect()
}

/// Picks two mating parents. The first comes from the CA; the second comes
/// from the CA with probability `occupation` and from the DA otherwise.
pub fn restricted_mating<'a>(
    ca: &'a [Solution],
    da: &'a [Solution],
    occupation: f64,
    rng: &mut RunRng,
) -> (&'a Solution, &'a Solution) {
    let p1 = &ca[rng.random_range(0..ca.len())];
    let from_ca = rng.random::<f64>() < occupation;
    let p2 = if from_ca {
        &ca[rng.random_range(0..ca.len())]
    } else {
        &da[rng.random_range(0..da.len())]
    };
    (p1, p2)
}

/// Occupation rate of the CA under bounds estimated from both archives.
pub fn ca_occupation(state: &ArchivePair) -> f64 {
    let bounds = bounds_of(&[&state.ca, &state.da]);
    let assoc = associate_objectives(&objectives(&state.ca), &state.weights, &bounds);
    decomposition::occupation_rate(&assoc, &state.weights)
}

/// Produces `N` offspring and updates both archives.
pub fn step_generation(
    state: &ArchivePair,
    config: &DtaeaConfig,
    problem: &DynamicProblem,
    env: &Environment,
    rng: &mut RunRng,
) -> ArchivePair {
    let n = config.n_pop;
    let occupation = if config.variant.restricted_mating() { Some(ca_occupation(state)) } else { None };
    let offspring: Vec<Solution> = (0..n)
        .map(|_| {
            let (p1, p2) = match occupation {
                Some(rate) => restricted_mating(&state.ca, &state.da, rate, rng),
                None => (
                    &state.ca[rng.random_range(0..state.ca.len())],
                    &state.da[rng.random_range(0..state.da.len())],
                ),
            };
            let (c1, c2) = sbx(&p1.x, &p2.x, &config.variation, rng);
            let child = if rng.random::<bool>() { c1 } else { c2 };
            let x = variation::polynomial_mutation(&child, &config.variation, rng);
            problem.solution_unchecked(x, env)
        })
        .collect();

    let bounds = bounds_of(&[&state.ca, &state.da, &offspring]);
    let ca = update_ca(&state.ca, &offspring, n, &state.weights, &bounds);
    let da = update_da(&ca, &state.da, &offspring, n, &state.weights, &bounds);
    ArchivePair { ca, da, weights: state.weights.clone() }
}

/// A running DTAEA instance.
#[derive(Debug, Clone)]
pub struct Dtaea {
    pub config: DtaeaConfig,
    pub state: ArchivePair,
}

impl Dtaea {
    pub fn new(config: DtaeaConfig, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) -> Result<Self> {
        config.validate()?;
        let state = initialize(config.n_pop, problem, env, rng)?;
        Ok(Self { config, state })
    }

    fn reevaluate_all(&mut self, problem: &DynamicProblem, env: &Environment) {
        for s in self.state.ca.iter_mut().chain(self.state.da.iter_mut()) {
            *s = problem.reevaluate(s, env);
        }
    }
}

impl DynamicOptimizer for Dtaea {
    fn step(&mut self, problem: &DynamicProblem, env: &Environment, rng: &mut RunRng) {
        self.state = step_generation(&self.state, &self.config, problem, env, rng);
    }

    fn on_change(
        &mut self,
        problem: &DynamicProblem,
        env: &Environment,
        previous_m: usize,
        rng: &mut RunRng,
    ) -> Result<()> {
        if !self.config.variant.reconstructs() {
            self.reevaluate_all(problem, env);
            self.state.weights = weights_for_population(env.m, self.config.n_pop)?;
            return Ok(());
        }
        self.state = if env.m > previous_m {
            reconstruct_increase(&self.state.ca, problem, env, rng)?
        } else {
            reconstruct_decrease(&self.state.ca, problem, env, &self.config.variation, rng)?
        };
        Ok(())
    }

    fn on_drift(&mut self, problem: &DynamicProblem, env: &Environment, _rng: &mut RunRng) {
        self.reevaluate_all(problem, env);
    }

    fn output(&self) -> &[Solution] {
        &self.state.ca
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::LayerSpec;
    use crate::problems::ProblemId;
    use crate::seeded_rng;

    fn sol(f: &[f64]) -> Solution {
        Solution::new(vec![], f.to_vec(), 0)
    }

    fn fronts(pop: &[Solution]) -> Vec<Vec<f64>> {
        pop.iter().map(|s| s.f.clone()).collect()
    }

    fn five_weights() -> WeightSet {
        WeightSet::from_vectors(
            vec![
                vec![1.0, 0.0],
                vec![0.75, 0.25],
                vec![0.5, 0.5],
                vec![0.25, 0.75],
                vec![0.0, 1.0],
            ],
            LayerSpec::Single { h: 4 },
        )
        .unwrap()
    }

    fn unit_bounds() -> ObjectiveBounds {
        ObjectiveBounds { ideal: vec![0.0, 0.0], nadir: vec![1.0, 1.0] }
    }

    /// Ten solutions on and behind the front 1 - f1 = f2 with 5 subspaces.
    /// Angles from the f1 axis decide the subspace; x3, x7 are dominated.
    fn crowding_scenario() -> Vec<Solution> {
        let on = |deg: f64| {
            let a = deg.to_radians();
            vec![a.cos(), a.sin()]
        };
        let mut pts = vec![
            on(2.0),  // x0  subspace 0
            on(20.0), // x1  subspace 1
            on(24.0), // x2  subspace 1
            vec![0.95, 0.6], // x3 dominated
            on(44.0), // x4  subspace 2
            on(80.0), // x5  subspace 4
            on(85.0), // x6  subspace 4
            vec![0.8, 0.9], // x7 dominated
            on(88.0), // x8  subspace 4
            on(70.0), // x9  subspace 3
        ];
        // push x8 slightly off the front while keeping it non-dominated
        pts[8][0] += 0.004;
        pts[8][1] -= 0.0001;
        pts.iter().map(|f| sol(f)).collect()
    }

    #[test]
    fn ca_update_truncates_the_most_crowded_subspace() {
        let pop = crowding_scenario();
        let w = five_weights();
        let b = bounds_of(&[&pop]);
        let levels = sort_objectives(&fronts(&pop));
        assert_eq!(levels[0], vec![0, 1, 2, 4, 5, 6, 8, 9]);
        let assoc = associate_objectives(&fronts(&pop), &w, &b);
        assert_eq!(assoc.subspace_of[8], 4);
        assert_eq!(assoc.subspace_of[5], 4);
        assert_eq!(assoc.subspace_of[6], 4);

        let (ca, log) = update_ca_logged(&pop[..5], &pop[5..], 7, &w, &b);
        assert_eq!(ca.len(), 7);
        assert_eq!(log[0].subspace, 4);
        assert_eq!(log[0].density, 3);
        let worst_in_4 = [5, 6, 8]
            .into_iter()
            .max_by(|&a, &c| {
                tchebycheff(&pop[a].f, &w.vectors[4], &b.ideal)
                    .partial_cmp(&tchebycheff(&pop[c].f, &w.vectors[4], &b.ideal))
                    .unwrap()
            })
            .unwrap();
        assert_eq!(log[0].index, worst_in_4);
        assert!(!ca.contains(&pop[3]) && !ca.contains(&pop[7]));
    }

    #[test]
    fn ca_update_exact_first_front_skips_truncation() {
        let pop = crowding_scenario();
        let w = five_weights();
        let (ca, log) = update_ca_logged(&pop, &[], 8, &w, &bounds_of(&[&pop]));
        assert!(log.is_empty());
        let expected: Vec<_> = [0, 1, 2, 4, 5, 6, 8, 9].iter().map(|&i| pop[i].clone()).collect();
        assert_eq!(ca, expected);
    }

    #[test]
    fn ca_update_ignores_dominated_offspring() {
        let ca: Vec<_> = (0..5).map(|i| sol(&[i as f64 / 4.0, 1.0 - i as f64 / 4.0])).collect();
        let off: Vec<_> = (0..5).map(|i| sol(&[i as f64 / 4.0 + 0.1, 1.1 - i as f64 / 4.0])).collect();
        let b = bounds_of(&[&ca, &off]);
        assert_eq!(update_ca(&ca, &off, 5, &five_weights(), &b), ca);
    }

    #[test]
    fn da_update_skips_subspaces_covered_by_the_ca() {
        let w = five_weights();
        let b = unit_bounds();
        // CA: two members in subspace 0, one each in 2, 3 and 4; none in 1
        let ca: Vec<_> = [[0.99, 0.01], [0.98, 0.02], [0.7, 0.7], [0.35, 0.9], [0.01, 0.99]]
            .iter()
            .map(|f| sol(f))
            .collect();
        // R: x0..x5 in subspace 1 (x3 best non-dominated), others elsewhere
        let r: Vec<_> = [
            [0.9, 0.35],   // 0  subspace 1
            [0.95, 0.32],  // 1  subspace 1
            [0.99, 0.02],  // 2  subspace 0
            [0.85, 0.28],  // 3  subspace 1, best
            [0.5, 0.5],    // 4  subspace 2
            [0.88, 0.3],   // 5  subspace 1
            [0.3, 0.8],    // 6  subspace 3
            [0.02, 0.95],  // 7  subspace 4
            [0.97, 0.03],  // 8  subspace 0
            [0.45, 0.45],  // 9  subspace 2
        ]
        .iter()
        .map(|f| sol(f))
        .collect();
        let assoc = associate_objectives(&fronts(&r), &w, &b);
        assert_eq!(assoc.members[1], vec![0, 1, 3, 5]);
        let da = update_da(&ca, &r[..5], &r[5..], 5, &w, &b);
        // first sweep: subspace 0 skipped, subspace 1 gives x3; 2..4 covered
        assert_eq!(da[0], r[3]);
        // second sweep: subspace 1 again, then subspaces 2, 3, 4
        assert_eq!(da[1], r[5]);
        assert_eq!(da[2], r[9]);
        assert_eq!(da[3], r[6]);
        assert_eq!(da[4], r[7]);
    }

    #[test]
    fn da_update_round_robin_without_ca_cover() {
        let w = five_weights();
        let b = unit_bounds();
        let ca: Vec<Solution> = vec![sol(&[5.0, 5.0])];
        // ca member far away is associated with subspace 2; clear it by using
        // an empty slice instead
        let r: Vec<_> = (0..10)
            .map(|i| {
                let a = ((i % 5) as f64 * 22.5 + (i / 5) as f64 * 0.5).to_radians();
                let scale = 1.0 + (i / 5) as f64 * 0.1;
                sol(&[a.cos() * scale, a.sin() * scale])
            })
            .collect();
        let da = update_da(&[], &r, &[], 5, &w, &b);
        assert_eq!(da, r[..5].to_vec());
        assert_eq!(update_da(&ca, &r, &[], 5, &w, &b).len(), 5);
    }

    #[test]
    fn da_update_single_subspace_takes_best_by_scalarization() {
        let w = five_weights();
        let b = unit_bounds();
        let ca = vec![sol(&[0.99, 0.01])];
        let r: Vec<_> = (0..8)
            .map(|i| sol(&[0.02 + 0.01 * i as f64, 0.9 + 0.013 * ((i * 5) % 8) as f64]))
            .collect();
        let assoc = associate_objectives(&fronts(&r), &w, &b);
        assert!(assoc.subspace_of.iter().all(|&k| k == 4));
        let da = update_da(&ca, &r, &[], 4, &w, &b);
        let mut by_g: Vec<usize> = (0..8).collect();
        by_g.sort_by(|&a, &c| {
            tchebycheff(&r[a].f, &w.vectors[4], &b.ideal)
                .partial_cmp(&tchebycheff(&r[c].f, &w.vectors[4], &b.ideal))
                .unwrap()
        });
        let expected: Vec<_> = by_g[..4].iter().map(|&i| r[i].clone()).collect();
        assert_eq!(da, expected);
    }

    #[test]
    fn mating_boundaries() {
        let mut rng = seeded_rng(11);
        let ca: Vec<_> = (0..5).map(|i| sol(&[i as f64, 0.0])).collect();
        let da: Vec<_> = (0..5).map(|i| sol(&[i as f64, 1.0])).collect();
        for _ in 0..200 {
            let (p1, p2) = restricted_mating(&ca, &da, 1.0, &mut rng);
            assert_eq!((p1.f[1], p2.f[1]), (0.0, 0.0));
            let (p1, p2) = restricted_mating(&ca, &da, 0.0, &mut rng);
            assert_eq!((p1.f[1], p2.f[1]), (0.0, 1.0));
        }
        let from_da = (0..10_000)
            .filter(|_| restricted_mating(&ca, &da, 0.5, &mut rng).1.f[1] == 1.0)
            .count();
        assert!((from_da as f64 / 1e4 - 0.5).abs() <= 0.02);
    }

    #[test]
    fn reconstruct_decrease_three_of_five() {
        let problem = DynamicProblem::new(ProblemId::F2);
        let env3 = Environment::new(0, 1, 3, 0);
        let env2 = Environment::new(1, 2, 2, 0);
        // under two objectives only x1 matters for the front; tail adds g
        let mk = |x1: f64, tail: f64| {
            let mut x = vec![tail; problem.n];
            x[0] = x1;
            x[1] = 0.3;
            problem.solution_unchecked(x, &env3)
        };
        let prev = vec![mk(0.1, 0.5), mk(0.5, 0.5), mk(0.5, 0.7), mk(0.9, 0.5), mk(0.9, 0.9)];
        let mut rng = seeded_rng(3);
        let pair = reconstruct_decrease(&prev, &problem, &env2, &VariationParams::default(), &mut rng).unwrap();
        assert_eq!(pair.ca.len(), 5);
        assert_eq!(pair.da.len(), 5);
        let ca_x: Vec<_> = pair.ca.iter().map(|s| s.x.clone()).collect();
        assert_eq!(ca_x[..3], [prev[0].x.clone(), prev[1].x.clone(), prev[3].x.clone()]);
        assert_eq!(pair.da[0].x, prev[2].x);
        assert_eq!(pair.da[1].x, prev[4].x);
        assert!(pair.ca.iter().chain(&pair.da).all(|s| s.f.len() == 2 && s.env_id == 1));
        assert_eq!(pair.weights.len(), 5);
    }

    #[test]
    fn step_keeps_capacity_and_is_deterministic() {
        let problem = DynamicProblem::new(ProblemId::F2);
        let env = Environment::new(0, 1, 3, 0);
        let config = DtaeaConfig::new(12, Variant::Full);
        let run = |seed| {
            let mut rng = seeded_rng(seed);
            let mut alg = Dtaea::new(config.clone(), &problem, &env, &mut rng).unwrap();
            for _ in 0..3 {
                alg.step(&problem, &env, &mut rng);
                assert_eq!(alg.state.ca.len(), 12);
                assert_eq!(alg.state.da.len(), 12);
            }
            alg.state
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }

    #[test]
    fn cloned_offspring_leave_the_ca_set_unchanged() {
        let problem = DynamicProblem::new(ProblemId::F2);
        let env = Environment::new(0, 1, 3, 0);
        let mut rng = seeded_rng(8);
        let state = initialize(12, &problem, &env, &mut rng).unwrap();
        let mut ca = update_ca(&state.ca, &[], 12, &state.weights, &bounds_of(&[&state.ca]));
        ca.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
        let b = bounds_of(&[&ca, &state.da]);
        let mut next = update_ca(&ca, &ca, 12, &state.weights, &b);
        next.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
        // duplicates compete only with their twins; the set of decision vectors is kept
        let mut uniq = next.clone();
        uniq.dedup();
        let mut orig = ca.clone();
        orig.dedup();
        assert!(uniq.iter().all(|s| orig.contains(s)));
    }

    #[test]
    fn variant_switches() {
        assert!(Variant::Full.restricted_mating() && Variant::Full.reconstructs());
        assert!(!Variant::V1.restricted_mating() && Variant::V1.reconstructs());
        assert!(Variant::V2.restricted_mating() && !Variant::V2.reconstructs());
        assert!(!Variant::V3.restricted_mating() && !Variant::V3.reconstructs());
        assert_eq!("dtaea-v2".parse::<Variant>().unwrap(), Variant::V2);
        assert!("dtaea-v9".parse::<Variant>().is_err());
    }
}

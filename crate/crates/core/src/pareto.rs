//! Solutions, Pareto dominance, non-dominated sorting and ideal/nadir
//! estimation.

use crate::error::{contract, Result};

/// Smallest admissible width of the ideal-to-nadir range in any objective.
pub const RANGE_GUARD: f64 = 1e-6;

/// A decision vector together with its objective vector.
///
/// `env_id` records the environment the objectives were computed in; solutions
/// from different environments are not comparable.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub env_id: usize,
}

impl Solution {
    pub fn new(x: Vec<f64>, f: Vec<f64>, env_id: usize) -> Self {
        Self { x, f, env_id }
    }

    pub fn num_objectives(&self) -> usize {
        self.f.len()
    }
}

/// Componentwise best and worst objective values used for normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveBounds {
    pub ideal: Vec<f64>,
    pub nadir: Vec<f64>,
}

impl ObjectiveBounds {
    /// Normalization denominator for objective `i`, never below [`RANGE_GUARD`].
    pub fn range(&self, i: usize) -> f64 {
        (self.nadir[i] - self.ideal[i]).max(RANGE_GUARD)
    }
}

/// Dominance on raw objective slices. Callers guarantee equal lengths.
#[inline]
pub fn dominates_objectives(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

/// True iff `a` is no worse than `b` in every objective and strictly better in
/// at least one.
pub fn dominates(a: &Solution, b: &Solution) -> Result<bool> {
    if a.f.len() != b.f.len() {
        return Err(contract(format!(
            "objective lengths differ ({} vs {})",
            a.f.len(),
            b.f.len()
        )));
    }
    if a.env_id != b.env_id {
        return Err(contract(format!(
            "solutions from different environments ({} vs {})",
            a.env_id, b.env_id
        )));
    }
    Ok(dominates_objectives(&a.f, &b.f))
}

/// Fast non-dominated sorting over objective vectors.
///
/// Returns the non-domination levels, best first. Indices inside each level
/// are ascending.
pub fn sort_objectives<V: AsRef<[f64]>>(objs: &[V]) -> Vec<Vec<usize>> {
    let n = objs.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (fi, fj) = (objs[i].as_ref(), objs[j].as_ref());
            if dominates_objectives(fi, fj) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates_objectives(fj, fi) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut levels = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        levels.push(current);
        current = next;
    }
    levels
}

fn check_shared_env(pop: &[Solution]) -> Result<()> {
    if let Some(first) = pop.first() {
        for s in pop {
            if s.env_id != first.env_id || s.f.len() != first.f.len() {
                return Err(contract(
                    "population mixes environments or objective counts",
                ));
            }
        }
    }
    Ok(())
}

/// Fast non-dominated sorting of a population evaluated in one environment.
pub fn non_dominated_sort(pop: &[Solution]) -> Result<Vec<Vec<usize>>> {
    check_shared_env(pop)?;
    let objs: Vec<&[f64]> = pop.iter().map(|s| s.f.as_slice()).collect();
    Ok(sort_objectives(&objs))
}

/// Indices of the non-dominated members, ascending.
pub fn non_dominated_indices<V: AsRef<[f64]>>(objs: &[V]) -> Vec<usize> {
    (0..objs.len())
        .filter(|&i| {
            !objs
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && dominates_objectives(o.as_ref(), objs[i].as_ref()))
        })
        .collect()
}

/// Ideal point over all solutions, nadir point over the first front.
pub fn bounds_of_objectives<V: AsRef<[f64]>>(objs: &[V]) -> Result<ObjectiveBounds> {
    let Some(first) = objs.first() else {
        return Err(contract("cannot estimate bounds of an empty population"));
    };
    let m = first.as_ref().len();
    if objs.iter().any(|o| o.as_ref().len() != m) {
        return Err(contract("objective lengths differ"));
    }
    let mut ideal = vec![f64::INFINITY; m];
    for o in objs {
        for (z, &v) in ideal.iter_mut().zip(o.as_ref()) {
            *z = z.min(v);
        }
    }
    let mut nadir = vec![f64::NEG_INFINITY; m];
    for i in non_dominated_indices(objs) {
        for (z, &v) in nadir.iter_mut().zip(objs[i].as_ref()) {
            *z = z.max(v);
        }
    }
    for (z_nad, &z_ideal) in nadir.iter_mut().zip(&ideal) {
        if *z_nad - z_ideal < RANGE_GUARD {
            *z_nad = z_ideal + RANGE_GUARD;
        }
    }
    Ok(ObjectiveBounds { ideal, nadir })
}

/// Estimates the ideal and nadir points of the current environment from an
/// evaluated population.
pub fn estimate_bounds(pop: &[Solution]) -> Result<ObjectiveBounds> {
    check_shared_env(pop)?;
    let objs: Vec<&[f64]> = pop.iter().map(|s| s.f.as_slice()).collect();
    bounds_of_objectives(&objs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(f: &[f64]) -> Solution {
        Solution::new(vec![], f.to_vec(), 0)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&sol(&[0.2, 0.5]), &sol(&[0.3, 0.5])).unwrap());
        assert!(!dominates(&sol(&[0.2, 0.5]), &sol(&[0.2, 0.5])).unwrap());
        assert!(!dominates(&sol(&[0.2, 0.7]), &sol(&[0.3, 0.5])).unwrap());
    }

    #[test]
    fn dominance_rejects_mismatched_lengths() {
        assert!(matches!(
            dominates(&sol(&[0.2, 0.5]), &sol(&[0.3, 0.5, 0.1])),
            Err(crate::Error::Contract(_))
        ));
    }

    #[test]
    fn dominance_rejects_mixed_environments() {
        let mut b = sol(&[0.3, 0.5]);
        b.env_id = 1;
        assert!(dominates(&sol(&[0.2, 0.5]), &b).is_err());
    }

    #[test]
    fn sort_examples() {
        let pop: Vec<_> = [[0.0, 1.0], [1.0, 0.0], [2.0, 2.0], [3.0, 3.0]]
            .iter()
            .map(|f| sol(f))
            .collect();
        assert_eq!(
            non_dominated_sort(&pop).unwrap(),
            vec![vec![0, 1], vec![2], vec![3]]
        );
        assert_eq!(non_dominated_sort(&pop[..1]).unwrap(), vec![vec![0]]);
        assert!(non_dominated_sort(&[]).unwrap().is_empty());

        let front: Vec<_> = (0..5).map(|i| sol(&[i as f64, 4.0 - i as f64])).collect();
        assert_eq!(non_dominated_sort(&front).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn duplicates_share_a_level() {
        let pop = vec![sol(&[1.0, 1.0]), sol(&[1.0, 1.0]), sol(&[2.0, 2.0])];
        assert_eq!(non_dominated_sort(&pop).unwrap(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn bounds_examples() {
        let b = estimate_bounds(&[sol(&[0.0, 1.0]), sol(&[1.0, 0.0])]).unwrap();
        assert_eq!(b.ideal, vec![0.0, 0.0]);
        assert_eq!(b.nadir, vec![1.0, 1.0]);

        let b = estimate_bounds(&[sol(&[0.5, 0.5])]).unwrap();
        assert_eq!(b.ideal, vec![0.5, 0.5]);
        assert_eq!(b.nadir, vec![0.5 + 1e-6, 0.5 + 1e-6]);

        let b = estimate_bounds(&[sol(&[0.0, 2.0]), sol(&[1.0, 0.0]), sol(&[5.0, 5.0])]).unwrap();
        assert_eq!(b.ideal, vec![0.0, 0.0]);
        assert_eq!(b.nadir, vec![1.0, 2.0]);
    }

    #[test]
    fn bounds_of_empty_is_an_error() {
        assert!(matches!(estimate_bounds(&[]), Err(crate::Error::Contract(_))));
    }
}

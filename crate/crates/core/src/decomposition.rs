//! Weight vectors, objective normalization, subspace association, density
//! and the Tchebycheff scalarization.

use std::io::Write;

use crate::error::{contract, Error, Result};
use crate::pareto::{ObjectiveBounds, Solution};
use crate::problems::{MAX_OBJECTIVES, MIN_OBJECTIVES};

/// Denominator floor for zero weight components.
pub const WEIGHT_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerSpec {
    Single { h: usize },
    Two { h1: usize, h2: usize },
}

impl LayerSpec {
    /// Divisions used for `m` objectives.
    pub fn for_objectives(m: usize) -> Result<Self> {
        Ok(match m {
            2 => LayerSpec::Single { h: 299 },
            3 => LayerSpec::Single { h: 23 },
            4 => LayerSpec::Single { h: 10 },
            5 => LayerSpec::Two { h1: 6, h2: 4 },
            6 => LayerSpec::Two { h1: 5, h2: 2 },
            7 => LayerSpec::Two { h1: 4, h2: 3 },
            _ => return Err(Error::UnsupportedDimension(m)),
        })
    }
}

/// Uniformly spread weight vectors on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    pub vectors: Vec<Vec<f64>>,
    pub m: usize,
    pub layers: LayerSpec,
    units: Vec<Vec<f64>>,
}

impl WeightSet {
    pub fn from_vectors(vectors: Vec<Vec<f64>>, layers: LayerSpec) -> Result<Self> {
        let m = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|w| w.len() != m) {
            return Err(contract("weight vectors differ in length"));
        }
        let units = vectors
            .iter()
            .map(|w| {
                let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm == 0.0 {
                    Err(contract("zero weight vector"))
                } else {
                    Ok(w.iter().map(|v| v / norm).collect())
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { vectors, m, layers, units })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Writes one weight vector per row with header `w1..wm`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record((1..=self.m).map(|j| format!("w{j}")))?;
        for v in &self.vectors {
            w.write_record(v.iter().map(|e| e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Simplex-lattice points with `h` divisions in `m` dimensions.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn recurse(m: usize, h: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&c| c as f64 / h as f64).collect());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            recurse(m, h, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    recurse(m, h, h, &mut Vec::with_capacity(m), &mut out);
    out
}

fn layer_count(m: usize, h: usize) -> usize {
    // C(h + m - 1, m - 1)
    (1..m).fold(1usize, |acc, i| acc * (h + i) / i)
}

impl LayerSpec {
    pub fn count(&self, m: usize) -> usize {
        match *self {
            LayerSpec::Single { h } => layer_count(m, h),
            LayerSpec::Two { h1, h2 } => layer_count(m, h1) + layer_count(m, h2),
        }
    }
}

/// Weight vectors for `m` objectives: one lattice layer for m ≤ 4, a boundary
/// layer plus a shrunken inner layer for m ≥ 5.
pub fn generate_weights(m: usize) -> Result<WeightSet> {
    if !(MIN_OBJECTIVES..=MAX_OBJECTIVES).contains(&m) {
        return Err(Error::UnsupportedDimension(m));
    }
    weights_with_layers(m, LayerSpec::for_objectives(m)?)
}

pub fn weights_with_layers(m: usize, layers: LayerSpec) -> Result<WeightSet> {
    let vectors = match layers {
        LayerSpec::Single { h } => simplex_lattice(m, h),
        LayerSpec::Two { h1, h2 } => {
            let centre = 1.0 / m as f64;
            let mut v = simplex_lattice(m, h1);
            v.extend(
                simplex_lattice(m, h2)
                    .into_iter()
                    .map(|w| w.into_iter().map(|e| 0.5 * e + 0.5 * centre).collect()),
            );
            v
        }
    };
    WeightSet::from_vectors(vectors, layers)
}

/// The standard set for `m` if it has at most `n` vectors, otherwise the
/// largest lattice of the same layout (two layers from five objectives on)
/// that does, never fewer than the `m` axes.
pub fn weights_for_population(m: usize, n: usize) -> Result<WeightSet> {
    let standard = LayerSpec::for_objectives(m)?;
    if standard.count(m) <= n {
        return generate_weights(m);
    }
    let mut best = LayerSpec::Single { h: 1 };
    for h1 in 1.. {
        if layer_count(m, h1) > n {
            break;
        }
        let single = LayerSpec::Single { h: h1 };
        if single.count(m) > best.count(m) {
            best = single;
        }
        let inner = if m >= 5 { 1..h1 } else { 0..0 };
        for h2 in inner {
            let two = LayerSpec::Two { h1, h2 };
            if two.count(m) <= n && two.count(m) > best.count(m) {
                best = two;
            }
        }
    }
    weights_with_layers(m, best)
}

/// Maps `f` into the unit box spanned by the ideal and nadir points.
pub fn normalize(f: &[f64], bounds: &ObjectiveBounds) -> Vec<f64> {
    f.iter()
        .enumerate()
        .map(|(i, &v)| (v - bounds.ideal[i]) / bounds.range(i))
        .collect()
}

/// Distance from `fbar` to the ray through the origin along `w`.
pub fn perpendicular_distance(fbar: &[f64], w: &[f64]) -> Result<f64> {
    if fbar.len() != w.len() {
        return Err(contract("vector lengths differ"));
    }
    let ww: f64 = w.iter().map(|v| v * v).sum();
    if ww == 0.0 {
        return Err(contract("zero weight vector"));
    }
    let lambda = (fbar.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww).max(0.0);
    Ok(fbar
        .iter()
        .zip(w)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt())
}

#[inline]
fn squared_distance_to_unit_ray(fbar: &[f64], unit: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut norm2 = 0.0;
    for (a, u) in fbar.iter().zip(unit) {
        dot += a * u;
        norm2 += a * a;
    }
    let dot = dot.max(0.0);
    (norm2 - dot * dot).max(0.0)
}

/// Partition of a population into weight-vector subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    pub subspace_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Association {
    pub fn density(&self, subspace: usize) -> usize {
        self.members[subspace].len()
    }

    /// Density of each solution's own subspace.
    pub fn solution_densities(&self) -> Vec<usize> {
        self.subspace_of.iter().map(|&k| self.members[k].len()).collect()
    }
}

/// Index of the weight vector closest to the already-normalized `fbar`.
pub fn nearest_subspace(fbar: &[f64], weights: &WeightSet) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, u) in weights.units.iter().enumerate() {
        let d = squared_distance_to_unit_ray(fbar, u);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Associates objective vectors with subspaces in normalized space.
pub fn associate_objectives<V: AsRef<[f64]>>(
    objs: &[V],
    weights: &WeightSet,
    bounds: &ObjectiveBounds,
) -> Association {
    let mut members = vec![Vec::new(); weights.len()];
    let subspace_of = objs
        .iter()
        .enumerate()
        .map(|(idx, f)| {
            let k = nearest_subspace(&normalize(f.as_ref(), bounds), weights);
            members[k].push(idx);
            k
        })
        .collect();
    Association { subspace_of, members }
}

/// Each solution goes to the subspace of minimal perpendicular distance in
/// normalized space; ties go to the lowest subspace index.
pub fn associate(pop: &[Solution], weights: &WeightSet, bounds: &ObjectiveBounds) -> Association {
    let objs: Vec<&[f64]> = pop.iter().map(|s| s.f.as_slice()).collect();
    associate_objectives(&objs, weights, bounds)
}

/// Tchebycheff scalarization `max_j |f_j - z_j| / w_j` with a guarded
/// denominator. Lower is better.
pub fn tchebycheff(f: &[f64], w: &[f64], ideal: &[f64]) -> f64 {
    f.iter()
        .zip(w)
        .zip(ideal)
        .map(|((&fj, &wj), &zj)| (fj - zj).abs() / wj.max(WEIGHT_GUARD))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Fraction of subspaces holding at least one associated solution.
pub fn occupation_rate(assoc: &Association, weights: &WeightSet) -> f64 {
    if weights.is_empty() {
        return 0.0;
    }
    let occupied = assoc.members.iter().filter(|m| !m.is_empty()).count();
    occupied as f64 / weights.len() as f64
}

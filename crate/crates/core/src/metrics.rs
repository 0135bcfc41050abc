//! Quality indicators: IGD, hypervolume, their time averages and per-step
//! algorithm ranking.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{contract, Result};

/// Default Monte Carlo sample count for hypervolume with four or more objectives.
pub const HV_SAMPLES: usize = 1_000_000;
pub const HV_SEED: u64 = 0x5eed_4a11;

/// Metric values at the end of one time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricRecord {
    pub time_step: usize,
    pub m: usize,
    pub igd: f64,
    /// Hypervolume w.r.t. the worst point (2,…,2), divided by 2^m.
    pub hv_norm: f64,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Mean distance from each reference point to its nearest approximation point.
pub fn igd<R: AsRef<[f64]>, A: AsRef<[f64]>>(reference: &[R], approx: &[A]) -> Result<f64> {
    if approx.is_empty() {
        return Err(contract("IGD of an empty approximation set"));
    }
    if reference.is_empty() {
        return Err(contract("IGD against an empty reference set"));
    }
    let m = reference[0].as_ref().len();
    if approx.iter().any(|a| a.as_ref().len() != m) || reference.iter().any(|r| r.as_ref().len() != m) {
        return Err(contract("objective lengths differ"));
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            approx
                .iter()
                .map(|a| euclidean(r.as_ref(), a.as_ref()))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Hypervolume estimation settings for four or more objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HvOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for HvOptions {
    fn default() -> Self {
        Self { samples: HV_SAMPLES, seed: HV_SEED }
    }
}

fn contributing<A: AsRef<[f64]>>(approx: &[A], worst: &[f64]) -> Vec<Vec<f64>> {
    approx
        .iter()
        .map(|a| a.as_ref())
        .filter(|a| a.len() == worst.len() && a.iter().zip(worst).all(|(v, w)| v < w))
        .map(<[f64]>::to_vec)
        .collect()
}

fn hv_2d(points: &mut [Vec<f64>], worst: &[f64]) -> f64 {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut floor = worst[1];
    let mut area = 0.0;
    for p in points.iter() {
        if p[1] < floor {
            area += (worst[0] - p[0]) * (floor - p[1]);
            floor = p[1];
        }
    }
    area
}

fn hv_3d(points: &mut [Vec<f64>], worst: &[f64]) -> f64 {
    points.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slice: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for k in 0..points.len() {
        slice.push(points[k][..2].to_vec());
        let top = if k + 1 < points.len() { points[k + 1][2] } else { worst[2] };
        let depth = top - points[k][2];
        if depth > 0.0 {
            volume += hv_2d(&mut slice, worst) * depth;
        }
    }
    volume
}

/// Monte Carlo estimate over the box from the componentwise minimum of the
/// contributing points to `worst`.
pub fn hypervolume_mc(points: &[Vec<f64>], worst: &[f64], opts: HvOptions) -> f64 {
    if points.is_empty() || opts.samples == 0 {
        return 0.0;
    }
    let m = worst.len();
    let lower: Vec<f64> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = lower.iter().zip(worst).map(|(l, w)| w - l).product();
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));

    const CHUNK: usize = 16_384;
    let chunks = opts.samples.div_ceil(CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = crate::seeded_rng(opts.seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let count = CHUNK.min(opts.samples - c * CHUNK);
            let mut s = vec![0.0; m];
            let mut hits = 0;
            for _ in 0..count {
                for j in 0..m {
                    s[j] = lower[j] + rng.random::<f64>() * (worst[j] - lower[j]);
                }
                let dominated = sorted
                    .iter()
                    .take_while(|p| p[0] <= s[0])
                    .any(|p| p.iter().zip(&s).all(|(a, b)| a <= b));
                hits += dominated as usize;
            }
            hits
        })
        .sum();
    box_volume * hits as f64 / opts.samples as f64
}

/// Volume dominated by `approx` and bounded by `worst`. Exact for two and
/// three objectives, Monte Carlo otherwise.
pub fn hypervolume_with<A: AsRef<[f64]>>(approx: &[A], worst: &[f64], opts: HvOptions) -> f64 {
    let mut points = contributing(approx, worst);
    if points.is_empty() {
        return 0.0;
    }
    match worst.len() {
        1 => worst[0] - points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        2 => hv_2d(&mut points, worst),
        3 => hv_3d(&mut points, worst),
        _ => hypervolume_mc(&points, worst, opts),
    }
}

pub fn hypervolume<A: AsRef<[f64]>>(approx: &[A], worst: &[f64]) -> f64 {
    hypervolume_with(approx, worst, HvOptions::default())
}

/// Hypervolume w.r.t. (2,…,2) divided by 2^m.
pub fn normalized_hypervolume<A: AsRef<[f64]>>(approx: &[A], m: usize, opts: HvOptions) -> f64 {
    let worst = vec![2.0; m];
    (hypervolume_with(approx, &worst, opts) / 2f64.powi(m as i32)).clamp(0.0, 1.0)
}

/// Time-averaged IGD.
pub fn migd(records: &[MetricRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(contract("MIGD over no time steps"));
    }
    Ok(records.iter().map(|r| r.igd).sum::<f64>() / records.len() as f64)
}

/// Time-averaged normalized hypervolume.
pub fn mhv(records: &[MetricRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(contract("MHV over no time steps"));
    }
    Ok(records.iter().map(|r| r.hv_norm).sum::<f64>() / records.len() as f64)
}

/// Ranks algorithms at every time step (1 = best, ties share the mean of the
/// tied ranks) and returns each algorithm's mean rank.
#[allow(clippy::needless_range_loop)]
pub fn rank_algorithms(scores: &BTreeMap<String, Vec<f64>>, lower_is_better: bool) -> Result<BTreeMap<String, f64>> {
    let steps = scores.values().next().map_or(0, Vec::len);
    if scores.values().any(|s| s.len() != steps) {
        return Err(contract("score lists differ in length"));
    }
    let names: Vec<&String> = scores.keys().collect();
    let mut total = vec![0.0; names.len()];
    for t in 0..steps {
        let vals: Vec<f64> = names
            .iter()
            .map(|n| if lower_is_better { scores[*n][t] } else { -scores[*n][t] })
            .collect();
        for (i, &v) in vals.iter().enumerate() {
            let better = vals.iter().filter(|&&o| o < v).count() as f64;
            let tied = vals.iter().filter(|&&o| o == v).count() as f64;
            total[i] += better + (tied + 1.0) / 2.0;
        }
    }
    Ok(names
        .into_iter()
        .zip(total)
        .map(|(n, t)| (n.clone(), if steps == 0 { 0.0 } else { t / steps as f64 }))
        .collect())
}

// Brute-force reference implementations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;

pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

/// Peels non-dominated layers by pairwise comparison.
pub fn levels(objs: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..objs.len()).collect();
    let mut out = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| dominates(&objs[j], &objs[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        out.push(front);
    }
    out
}

pub fn crowding(front: &[&[f64]]) -> Vec<f64> {
    let n = front.len();
    let mut d = vec![0.0; n];
    for j in 0..front[0].len() {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| front[a][j].partial_cmp(&front[b][j]).unwrap().then(a.cmp(&b)));
        let range = front[idx[n - 1]][j] - front[idx[0]][j];
        d[idx[0]] = f64::INFINITY;
        d[idx[n - 1]] = f64::INFINITY;
        if range > 0.0 {
            for k in 1..n.saturating_sub(1) {
                d[idx[k]] += (front[idx[k + 1]][j] - front[idx[k - 1]][j]) / range;
            }
        }
    }
    d
}

/// Ranks every member by (level, -crowding, index) and keeps the first `n`.
pub fn survival(objs: &[Vec<f64>], n: usize) -> Vec<usize> {
    let mut keyed = Vec::new();
    for (r, level) in levels(objs).into_iter().enumerate() {
        let front: Vec<&[f64]> = level.iter().map(|&i| objs[i].as_slice()).collect();
        for (&i, c) in level.iter().zip(crowding(&front)) {
            keyed.push((r, c, i));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.partial_cmp(&a.1).unwrap()).then(a.2.cmp(&b.2)));
    let mut kept: Vec<usize> = keyed[..n].iter().map(|k| k.2).collect();
    kept.sort_unstable();
    kept
}

/// Hypervolume by splitting the box at every point coordinate and summing
/// the dominated grid cells.
pub fn grid_hypervolume(points: &[Vec<f64>], worst: &[f64]) -> f64 {
    let m = worst.len();
    let axes: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let mut c: Vec<f64> = points.iter().map(|p| p[j]).filter(|&v| v < worst[j]).collect();
            c.push(worst[j]);
            c.sort_by(|a, b| a.partial_cmp(b).unwrap());
            c.dedup();
            c
        })
        .collect();
    let mut total = 0.0;
    let mut cell = vec![0usize; m];
    'cells: loop {
        let lower: Vec<f64> = (0..m).map(|j| axes[j][cell[j]]).collect();
        let inside = cell.iter().enumerate().all(|(j, &c)| c + 1 < axes[j].len());
        if inside && points.iter().any(|p| p.iter().zip(&lower).all(|(a, b)| a <= b)) {
            total += (0..m).map(|j| axes[j][cell[j] + 1] - axes[j][cell[j]]).product::<f64>();
        }
        for j in 0..m {
            cell[j] += 1;
            if cell[j] < axes[j].len() {
                continue 'cells;
            }
            cell[j] = 0;
        }
        break;
    }
    total
}

pub fn random_points<R: Rng>(rng: &mut R, count: usize, m: usize, discrete: bool) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            (0..m)
                .map(|_| if discrete { rng.random_range(0..4) as f64 } else { rng.random::<f64>() })
                .collect()
        })
        .collect()
}

/// Points on the positive part of the unit sphere, pushed outwards by a
/// random factor so that some are dominated.
pub fn random_front<R: Rng>(rng: &mut R, count: usize, m: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..m).map(|_| rng.random::<f64>() + 1e-3).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let scale = 1.0 + 0.3 * rng.random::<f64>();
            v.into_iter().map(|x| scale * x / norm).collect()
        })
        .collect()
}

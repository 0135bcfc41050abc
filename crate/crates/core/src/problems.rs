//! Dynamic benchmark problems F1–F6 with a time-varying number of objectives,
//! objective-count schedules and Pareto-front reference samplers.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{contract, Error, Result};
use crate::pareto::Solution;

pub const MIN_OBJECTIVES: usize = 2;
pub const MAX_OBJECTIVES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl ProblemId {
    pub const ALL: [ProblemId; 6] = [
        ProblemId::F1,
        ProblemId::F2,
        ProblemId::F3,
        ProblemId::F4,
        ProblemId::F5,
        ProblemId::F6,
    ];

    /// Whether the front moves with the drift clock as well as with `m`.
    pub fn drifts(self) -> bool {
        matches!(self, ProblemId::F5 | ProblemId::F6)
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(ProblemId::F1),
            "F2" => Ok(ProblemId::F2),
            "F3" => Ok(ProblemId::F3),
            "F4" => Ok(ProblemId::F4),
            "F5" => Ok(ProblemId::F5),
            "F6" => Ok(ProblemId::F6),
            other => Err(Error::Config(format!("unknown problem `{other}` (expected F1..F6)"))),
        }
    }
}

/// The environment solutions are evaluated in: which objective count is
/// active and which generation the drift clock reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Environment {
    /// Increments on every change (objective count or drift).
    pub id: usize,
    pub time_step: usize,
    pub m: usize,
    /// Global generation counter, starting at 0 at run start.
    pub tau: usize,
}

impl Environment {
    pub fn new(id: usize, time_step: usize, m: usize, tau: usize) -> Self {
        Self { id, time_step, m, tau }
    }
}

/// One of the F1–F6 benchmark problems with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicProblem {
    pub id: ProblemId,
    /// Decision dimension, fixed across environments.
    pub n: usize,
    /// Position-variable exponent of F4.
    pub alpha: f64,
    /// Generations per drift tick (F5/F6).
    pub tau_bar: usize,
    /// Drift severity (F5/F6).
    pub n_bar: usize,
    /// Keep the 0.5 factor on the first m-1 spherical objectives.
    pub table1_verbatim: bool,
}

impl DynamicProblem {
    pub fn new(id: ProblemId) -> Self {
        let n = match id {
            ProblemId::F1 => 11,
            _ => 16,
        };
        Self {
            id,
            n,
            alpha: 100.0,
            tau_bar: 5,
            n_bar: 10,
            table1_verbatim: false,
        }
    }

    pub fn with_verbatim(mut self, verbatim: bool) -> Self {
        self.table1_verbatim = verbatim;
        self
    }

    /// Drift tick reduced to one period of G (period 2 in drift time).
    pub fn drift_bucket(&self, tau: usize) -> usize {
        if !self.id.drifts() {
            return 0;
        }
        (tau / self.tau_bar) % (2 * self.n_bar)
    }

    /// Drift time t̄ = floor(τ/τ_t̄)/n_t̄, reduced modulo the period of |sin|.
    pub fn drift_time(&self, tau: usize) -> f64 {
        ((tau / self.tau_bar) % (2 * self.n_bar)) as f64 / self.n_bar as f64
    }

    /// G(t̄) = |sin(0.5π t̄)|; zero for the stationary problems.
    pub fn g_shift(&self, tau: usize) -> f64 {
        if !self.id.drifts() {
            return 0.0;
        }
        (0.5 * PI * self.drift_time(tau)).sin().abs()
    }

    fn position_exponent(&self, tau: usize) -> Option<f64> {
        match self.id {
            ProblemId::F4 => Some(self.alpha),
            ProblemId::F6 => Some(1.0 + 100.0 * (0.5 * PI * self.drift_time(tau)).sin().powi(4)),
            _ => None,
        }
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if !(MIN_OBJECTIVES..=MAX_OBJECTIVES).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        if m > self.n {
            return Err(contract(format!("m = {m} exceeds the decision dimension {}", self.n)));
        }
        Ok(())
    }

    /// Objective vector of `x` with `m` objectives at generation `tau`.
    pub fn evaluate(&self, x: &[f64], m: usize, tau: usize) -> Result<Vec<f64>> {
        self.check_m(m)?;
        if x.len() != self.n {
            return Err(contract(format!("expected {} decision variables, got {}", self.n, x.len())));
        }
        if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(contract(format!("decision variable {v} outside [0, 1]")));
        }
        Ok(self.evaluate_unchecked(x, m, tau))
    }

    /// Same as [`evaluate`](Self::evaluate) without input validation.
    pub(crate) fn evaluate_unchecked(&self, x: &[f64], m: usize, tau: usize) -> Vec<f64> {
        let tail = &x[m - 1..];
        let shift = self.g_shift(tau);
        let g = match self.id {
            ProblemId::F1 | ProblemId::F3 => {
                let sum: f64 = tail
                    .iter()
                    .map(|&v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
                    .sum();
                100.0 * (tail.len() as f64 + sum)
            }
            ProblemId::F2 | ProblemId::F4 => tail.iter().map(|&v| (v - 0.5).powi(2)).sum(),
            ProblemId::F5 => tail.iter().map(|&v| (v - shift).powi(2)).sum(),
            ProblemId::F6 => shift + tail.iter().map(|&v| (v - shift).powi(2)).sum::<f64>(),
        };
        let mut pos: Vec<f64> = x[..m - 1].to_vec();
        if let Some(e) = self.position_exponent(tau) {
            pos.iter_mut().for_each(|v| *v = v.powf(e));
        }
        match self.id {
            ProblemId::F1 => linear_objectives(&pos, g),
            _ => spherical_objectives(&pos, g, self.table1_verbatim),
        }
    }

    /// Evaluates `x` in `env`, producing a stamped solution.
    pub fn solution(&self, x: Vec<f64>, env: &Environment) -> Result<Solution> {
        let f = self.evaluate(&x, env.m, env.tau)?;
        Ok(Solution::new(x, f, env.id))
    }

    pub(crate) fn solution_unchecked(&self, x: Vec<f64>, env: &Environment) -> Solution {
        let f = self.evaluate_unchecked(&x, env.m, env.tau);
        Solution::new(x, f, env.id)
    }

    /// Re-evaluates an existing decision vector in `env`.
    pub(crate) fn reevaluate(&self, s: &Solution, env: &Environment) -> Solution {
        self.solution_unchecked(s.x.clone(), env)
    }

    /// `count` points on the Pareto front for `m` objectives at generation
    /// `tau`, from seeded uniform simplex directions mapped onto the front.
    pub fn sample_pf(&self, m: usize, tau: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        self.check_m(m)?;
        let mut rng = crate::seeded_rng(seed);
        let radius = match self.id {
            ProblemId::F6 => 1.0 + self.g_shift(tau),
            _ => 1.0,
        };
        let points = (0..count)
            .map(|_| {
                let mut v: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                let sum: f64 = v.iter().sum();
                v.iter_mut().for_each(|e| *e /= sum);
                if self.id == ProblemId::F1 {
                    v.iter_mut().for_each(|e| *e *= 0.5);
                } else {
                    let norm = v.iter().map(|e| e * e).sum::<f64>().sqrt();
                    v.iter_mut().for_each(|e| *e *= radius / norm);
                    if self.table1_verbatim {
                        v[..m - 1].iter_mut().for_each(|e| *e *= 0.5);
                    }
                }
                v
            })
            .collect();
        Ok(points)
    }
}

fn linear_objectives(pos: &[f64], g: f64) -> Vec<f64> {
    let m = pos.len() + 1;
    let scale = 0.5 * (1.0 + g);
    (1..=m)
        .map(|j| {
            let mut v = scale * pos[..m - j].iter().product::<f64>();
            if j > 1 {
                v *= 1.0 - pos[m - j];
            }
            v
        })
        .collect()
}

fn spherical_objectives(pos: &[f64], g: f64, verbatim: bool) -> Vec<f64> {
    let m = pos.len() + 1;
    (1..=m)
        .map(|j| {
            let mut v = (1.0 + g) * pos[..m - j].iter().map(|p| (p * PI / 2.0).cos()).product::<f64>();
            if j > 1 {
                v *= (pos[m - j] * PI / 2.0).sin();
            }
            if verbatim && j < m {
                v *= 0.5;
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    Eq10,
    Eq13,
    Custom,
}

/// Objective count per time step, plus the generation budget around it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeSchedule {
    pub kind: ScheduleKind,
    /// `(time step, m)` pairs, time steps starting at 1.
    pub steps: Vec<(usize, usize)>,
    pub warmup_gens: usize,
    pub tau_t: usize,
}

impl ChangeSchedule {
    fn from_counts(kind: ScheduleKind, counts: &[usize], warmup_gens: usize, tau_t: usize) -> Result<Self> {
        let schedule = Self {
            kind,
            steps: counts.iter().enumerate().map(|(i, &m)| (i + 1, m)).collect(),
            warmup_gens,
            tau_t,
        };
        schedule.validate()?;
        Ok(schedule)
    }

    /// 3 objectives, +1 per step up to 7, then -1 per step down to 2.
    pub fn eq10(warmup_gens: usize, tau_t: usize) -> Self {
        let mut counts = vec![3];
        for t in 2..=10 {
            let prev = counts[counts.len() - 1];
            counts.push(if t <= 5 { prev + 1 } else { prev - 1 });
        }
        Self::from_counts(ScheduleKind::Eq10, &counts, warmup_gens, tau_t).expect("valid schedule")
    }

    /// 3 objectives, +2 per step up to 7, then -2 and -1 down to 2.
    pub fn eq13(warmup_gens: usize, tau_t: usize) -> Self {
        Self::from_counts(ScheduleKind::Eq13, &[3, 5, 7, 5, 3, 2], warmup_gens, tau_t).expect("valid schedule")
    }

    pub fn custom(counts: &[usize], warmup_gens: usize, tau_t: usize) -> Result<Self> {
        Self::from_counts(ScheduleKind::Custom, counts, warmup_gens, tau_t)
    }

    /// Parses `eq10`, `eq13` or `custom:3,4,5`.
    pub fn parse(spec: &str, warmup_gens: usize, tau_t: usize) -> Result<Self> {
        match spec.trim() {
            "eq10" => Ok(Self::eq10(warmup_gens, tau_t)),
            "eq13" => Ok(Self::eq13(warmup_gens, tau_t)),
            other => {
                let Some(list) = other.strip_prefix("custom:") else {
                    return Err(Error::Config(format!(
                        "unknown schedule `{other}` (expected eq10, eq13 or custom:m1,m2,...)"
                    )));
                };
                let counts = list
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Config(format!("bad custom schedule `{list}`: {e}")))?;
                Self::custom(&counts, warmup_gens, tau_t)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::Config("schedule has no time steps".into()));
        }
        if self.tau_t == 0 {
            return Err(Error::Config("tau_t must be at least 1".into()));
        }
        for &(_, m) in &self.steps {
            if !(MIN_OBJECTIVES..=MAX_OBJECTIVES).contains(&m) {
                return Err(Error::UnsupportedDimension(m));
            }
        }
        for w in self.steps.windows(2) {
            if w[1].0 != w[0].0 + 1 {
                return Err(Error::Config("schedule time steps must be consecutive".into()));
            }
            if w[0].1 == w[1].1 {
                return Err(Error::Config(format!(
                    "objective count repeats at time step {}",
                    w[1].0
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn first_step(&self) -> usize {
        self.steps[0].0
    }

    pub fn last_step(&self) -> usize {
        self.steps[self.steps.len() - 1].0
    }

    /// Objective count at time step `t`.
    pub fn m_of(&self, t: usize) -> Result<usize> {
        self.steps
            .iter()
            .find(|&&(step, _)| step == t)
            .map(|&(_, m)| m)
            .ok_or_else(|| contract(format!("time step {t} outside the schedule")))
    }

    pub fn m_sequence(&self) -> Vec<usize> {
        self.steps.iter().map(|&(_, m)| m).collect()
    }

    pub fn max_m(&self) -> usize {
        self.m_sequence().into_iter().max().unwrap_or(MIN_OBJECTIVES)
    }

    /// Total generations: the warmup at the first step plus `tau_t` for each
    /// later step.
    pub fn total_generations(&self) -> usize {
        self.warmup_gens + (self.steps.len() - 1) * self.tau_t
    }

    /// Time step active during the 0-based generation `gen`.
    pub fn step_at(&self, gen: usize) -> usize {
        let offset = if gen < self.warmup_gens {
            0
        } else {
            1 + (gen - self.warmup_gens) / self.tau_t
        };
        self.steps[offset.min(self.steps.len() - 1)].0
    }

    /// 0-based index of the last generation of time step `t`.
    pub fn last_generation_of(&self, t: usize) -> usize {
        let offset = t - self.first_step();
        self.warmup_gens + offset * self.tau_t - 1
    }
}

/// Writes a reference front as CSV with header `f1..fm`.
pub fn write_front_csv(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    let m = points.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_path(path)?;
    w.write_record((1..=m).map(|j| format!("f{j}")))?;
    for p in points {
        w.write_record(p.iter().map(|v| format!("{v:.17e}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_front_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let p = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Config(format!("bad value in {}: {e}", path.display())))?;
        points.push(p);
    }
    Ok(points)
}

//! Experiment driver: runs an algorithm through an objective-count schedule
//! for several seeds, records metrics per time step, and turns result files
//! into summary tables and trajectory data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::DynamicOptimizer;
use crate::baselines::{Baseline, BaselineAlgo, BaselineConfig};
use crate::dtaea::{Dtaea, DtaeaConfig, Variant};
use crate::error::{Error, Result};
use crate::metrics::{self, HvOptions};
use crate::problems::{read_front_csv, write_front_csv, ChangeSchedule, DynamicProblem, Environment, ProblemId};
use crate::{seeded_rng, RunRng};

/// Environment variable overriding the reference-front cache directory.
pub const CACHE_ENV: &str = "DMOLAB_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    Dtaea(VariantKey),
    Baseline(BaselineKey),
}

/// Orderable wrapper so algorithm kinds can key sorted maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariantKey(u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaselineKey(u8);

impl AlgorithmKind {
    pub const ALL: [&'static str; 7] = ["dtaea", "dtaea-v1", "dtaea-v2", "dtaea-v3", "nsga2", "dnsga2", "moead"];

    pub fn variant(self) -> Option<Variant> {
        match self {
            AlgorithmKind::Dtaea(VariantKey(k)) => Some([Variant::Full, Variant::V1, Variant::V2, Variant::V3][k as usize]),
            AlgorithmKind::Baseline(_) => None,
        }
    }

    pub fn baseline(self) -> Option<BaselineAlgo> {
        match self {
            AlgorithmKind::Baseline(BaselineKey(k)) => {
                Some([BaselineAlgo::Nsga2, BaselineAlgo::Dnsga2, BaselineAlgo::Moead][k as usize])
            }
            AlgorithmKind::Dtaea(_) => None,
        }
    }
}

impl From<Variant> for AlgorithmKind {
    fn from(v: Variant) -> Self {
        AlgorithmKind::Dtaea(VariantKey(match v {
            Variant::Full => 0,
            Variant::V1 => 1,
            Variant::V2 => 2,
            Variant::V3 => 3,
        }))
    }
}

impl From<BaselineAlgo> for AlgorithmKind {
    fn from(b: BaselineAlgo) -> Self {
        AlgorithmKind::Baseline(BaselineKey(match b {
            BaselineAlgo::Nsga2 => 0,
            BaselineAlgo::Dnsga2 => 1,
            BaselineAlgo::Moead => 2,
        }))
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.variant(), self.baseline()) {
            (Some(v), _) => v.fmt(f),
            (_, Some(b)) => b.fmt(f),
            _ => unreachable!(),
        }
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        if let Ok(v) = s.parse::<Variant>() {
            if s.starts_with("dtaea") {
                return Ok(v.into());
            }
        }
        s.parse::<BaselineAlgo>().map(Into::into).map_err(|_| {
            Error::Config(format!("unknown algorithm `{s}` (expected one of {})", Self::ALL.join(", ")))
        })
    }
}

/// Everything needed to run one (problem, algorithm, τ_t) cell over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub algorithm: AlgorithmKind,
    pub tau_t: usize,
    pub n_pop: usize,
    pub schedule: ChangeSchedule,
    pub seeds: Vec<u64>,
    pub warmup_gens: usize,
    pub ref_size: usize,
    pub ref_seed: u64,
    pub out_path: PathBuf,
    /// Log IGD after every generation, not only at the end of time steps.
    pub trajectory: bool,
    /// Fill `wall_ms` with measured times (makes output non-reproducible).
    pub timing: bool,
    pub hv: HvOptions,
    pub table1_verbatim: bool,
    pub cache_dir: Option<PathBuf>,
}

/// Key-value config file mirroring [`ExperimentConfig`]; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub problem: Option<String>,
    pub algorithm: Option<String>,
    pub tau_t: Option<usize>,
    pub n_pop: Option<usize>,
    pub schedule: Option<String>,
    pub seeds: Option<String>,
    pub warmup_gens: Option<usize>,
    pub ref_size: Option<usize>,
    pub ref_seed: Option<u64>,
    pub out_path: Option<PathBuf>,
    pub trajectory: Option<bool>,
    pub timing: Option<bool>,
    pub hv_samples: Option<usize>,
    pub table1_verbatim: Option<bool>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn overridden_by(self, other: ConfigFile) -> ConfigFile {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigFile { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            problem, algorithm, tau_t, n_pop, schedule, seeds, warmup_gens, ref_size, ref_seed, out_path,
            trajectory, timing, hv_samples, table1_verbatim, cache_dir
        )
    }

    pub fn into_config(self) -> Result<ExperimentConfig> {
        let problem = self.problem.as_deref().unwrap_or("F2").parse()?;
        let algorithm = self.algorithm.as_deref().unwrap_or("dtaea").parse()?;
        let tau_t = self.tau_t.unwrap_or(50);
        let warmup_gens = self.warmup_gens.unwrap_or(300);
        if tau_t == 0 || warmup_gens == 0 {
            return Err(Error::Config("tau_t and warmup_gens must be at least 1".into()));
        }
        let schedule = ChangeSchedule::parse(self.schedule.as_deref().unwrap_or("eq10"), warmup_gens, tau_t)?;
        let config = ExperimentConfig {
            problem,
            algorithm,
            tau_t,
            n_pop: self.n_pop.unwrap_or(300),
            schedule,
            seeds: parse_seeds(self.seeds.as_deref().unwrap_or("1"))?,
            warmup_gens,
            ref_size: self.ref_size.unwrap_or(1000),
            ref_seed: self.ref_seed.unwrap_or(2017),
            out_path: self.out_path.unwrap_or_else(|| PathBuf::from("results")),
            trajectory: self.trajectory.unwrap_or(false),
            timing: self.timing.unwrap_or(false),
            hv: HvOptions { samples: self.hv_samples.unwrap_or(metrics::HV_SAMPLES), ..HvOptions::default() },
            table1_verbatim: self.table1_verbatim.unwrap_or(false),
            cache_dir: self.cache_dir,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parses `1..10` (inclusive), `1,4,9` or a single seed.
pub fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let bad = |e: std::num::ParseIntError| Error::Config(format!("bad seed list `{spec}`: {e}"));
    let seeds: Vec<u64> = if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (a.trim().parse::<u64>().map_err(bad)?, b.trim().parse::<u64>().map_err(bad)?);
        (a..=b).collect()
    } else {
        spec.split(',').map(|s| s.trim().parse::<u64>()).collect::<std::result::Result<_, _>>().map_err(bad)?
    };
    if seeds.is_empty() {
        return Err(Error::Config(format!("seed list `{spec}` is empty")));
    }
    Ok(seeds)
}

impl ExperimentConfig {
    pub fn new(problem: ProblemId, algorithm: AlgorithmKind, tau_t: usize, n_pop: usize, seeds: Vec<u64>) -> Self {
        Self {
            problem,
            algorithm,
            tau_t,
            n_pop,
            schedule: ChangeSchedule::eq10(300, tau_t),
            seeds,
            warmup_gens: 300,
            ref_size: 1000,
            ref_seed: 2017,
            out_path: PathBuf::from("results"),
            trajectory: false,
            timing: false,
            hv: HvOptions::default(),
            table1_verbatim: false,
            cache_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau_t == 0 {
            return Err(Error::Config("tau_t must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.n_pop < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        if self.ref_size == 0 {
            return Err(Error::Config("reference set size must be positive".into()));
        }
        if self.schedule.warmup_gens != self.warmup_gens || self.schedule.tau_t != self.tau_t {
            return Err(Error::Config("schedule generation budget disagrees with the config".into()));
        }
        if self.warmup_gens == 0 {
            return Err(Error::Config("warmup must be at least one generation".into()));
        }
        self.schedule.validate()
    }

    pub fn problem(&self) -> DynamicProblem {
        DynamicProblem::new(self.problem).with_verbatim(self.table1_verbatim)
    }

    pub fn cache_dir(&self) -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| self.cache_dir.clone())
            .unwrap_or_else(|| self.out_path.join("pf_cache"))
    }

    /// Result file of this cell inside `out_path`.
    pub fn trace_file(&self) -> PathBuf {
        self.out_path.join(format!("{}_{}_tau{}.csv", self.problem, self.algorithm, self.tau_t))
    }
}

/// One metric row of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub run_id: String,
    pub algorithm: String,
    pub problem: String,
    pub tau_t: usize,
    pub seed: u64,
    pub time_step: usize,
    /// Completed generations since run start (1-based).
    pub generation: usize,
    pub m: usize,
    pub igd: f64,
    /// `NaN` on intermediate trajectory rows.
    pub hv_norm: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
    /// Change hooks fired per run, in seed order.
    pub change_events: Vec<usize>,
}

impl RunTrace {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_rows(path, &self.rows)
    }
}

pub fn write_rows(path: &Path, rows: &[TraceRow]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> Result<Vec<TraceRow>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Reads every trace CSV in `dir` (or the single file `dir`).
pub fn read_traces(input: &Path) -> Result<Vec<TraceRow>> {
    if input.is_file() {
        return read_rows(input);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(input)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();
    let mut rows = Vec::new();
    for f in files {
        let mut r = csv::Reader::from_path(&f)?;
        if r.headers()?.get(0) != Some("run_id") {
            continue;
        }
        rows.extend(read_rows(&f)?);
    }
    Ok(rows)
}

type FrontKey = (ProblemId, usize, usize);

/// Reference fronts keyed by problem, objective count, drift bucket, size
/// and seed; kept in memory and mirrored as CSV files on disk.
#[derive(Debug)]
pub struct ReferenceCache {
    dir: PathBuf,
    size: usize,
    seed: u64,
    memory: Mutex<HashMap<FrontKey, Arc<Vec<Vec<f64>>>>>,
}

impl ReferenceCache {
    pub fn new(dir: PathBuf, size: usize, seed: u64) -> Self {
        Self { dir, size, seed, memory: Mutex::new(HashMap::new()) }
    }

    pub fn file_for(&self, problem: &DynamicProblem, m: usize, bucket: usize) -> PathBuf {
        let form = if problem.table1_verbatim { "_verbatim" } else { "" };
        self.dir.join(format!(
            "{}{form}_m{m}_b{bucket}_n{}_s{}.csv",
            problem.id, self.size, self.seed
        ))
    }

    pub fn get(&self, problem: &DynamicProblem, m: usize, tau: usize) -> Result<Arc<Vec<Vec<f64>>>> {
        let bucket = problem.drift_bucket(tau);
        let key = (problem.id, m, bucket);
        if let Some(hit) = self.memory.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let path = self.file_for(problem, m, bucket);
        let front = match read_front_csv(&path) {
            Ok(front) if front.len() == self.size && front.iter().all(|p| p.len() == m) => front,
            _ => {
                let front = problem.sample_pf(m, tau, self.size, self.seed)?;
                fs::create_dir_all(&self.dir)?;
                let tmp = path.with_extension(format!("tmp{}", std::process::id()));
                write_front_csv(&tmp, &front)?;
                fs::rename(&tmp, &path)?;
                front
            }
        };
        let front = Arc::new(front);
        self.memory.lock().expect("cache lock").insert(key, front.clone());
        Ok(front)
    }
}

fn build_optimizer(
    config: &ExperimentConfig,
    problem: &DynamicProblem,
    env: &Environment,
    rng: &mut RunRng,
) -> Result<Box<dyn DynamicOptimizer>> {
    if let Some(variant) = config.algorithm.variant() {
        return Ok(Box::new(Dtaea::new(DtaeaConfig::new(config.n_pop, variant), problem, env, rng)?));
    }
    let algo = config.algorithm.baseline().expect("baseline");
    Ok(Box::new(Baseline::new(BaselineConfig::new(algo, config.n_pop), problem, env, rng)?))
}

/// Runs one seed. Returns the metric rows and the number of change hooks fired.
pub fn run_seed(config: &ExperimentConfig, seed: u64, refs: &ReferenceCache) -> Result<(Vec<TraceRow>, usize)> {
    let problem = config.problem();
    let schedule = &config.schedule;
    let mut rng = seeded_rng(seed);
    let first = schedule.first_step();
    let mut env = Environment::new(0, first, schedule.m_of(first)?, 0);
    let mut alg = build_optimizer(config, &problem, &env, &mut rng)?;
    let run_id = format!("{}-{}-tau{}-seed{seed}", config.problem, config.algorithm, config.tau_t);
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut changes = 0;

    for gen in 0..schedule.total_generations() {
        let t = schedule.step_at(gen);
        if t != env.time_step {
            let previous_m = env.m;
            env = Environment::new(env.id + 1, t, schedule.m_of(t)?, gen);
            alg.on_change(&problem, &env, previous_m, &mut rng)?;
            changes += 1;
        } else if problem.drift_bucket(gen) != problem.drift_bucket(env.tau) {
            env = Environment::new(env.id + 1, t, env.m, gen);
            alg.on_drift(&problem, &env, &mut rng);
        }
        alg.step(&problem, &env, &mut rng);

        let step_end = gen == schedule.last_generation_of(t);
        if step_end || config.trajectory {
            let reference = refs.get(&problem, env.m, gen)?;
            let approx: Vec<&[f64]> = alg.output().iter().map(|s| s.f.as_slice()).collect();
            let igd = metrics::igd(&reference, &approx)?;
            let hv_norm = if step_end {
                metrics::normalized_hypervolume(&approx, env.m, config.hv)
            } else {
                f64::NAN
            };
            let wall_ms = if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            rows.push(TraceRow {
                run_id: run_id.clone(),
                algorithm: config.algorithm.to_string(),
                problem: config.problem.to_string(),
                tau_t: config.tau_t,
                seed,
                time_step: t,
                generation: gen + 1,
                m: env.m,
                igd,
                hv_norm,
                wall_ms,
            });
        }
    }
    Ok((rows, changes))
}

/// Runs every seed of the configured cell (seeds in parallel, each run
/// sequential) and returns the rows in seed order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunTrace> {
    config.validate()?;
    let refs = ReferenceCache::new(config.cache_dir(), config.ref_size, config.ref_seed);
    let per_seed: Vec<(Vec<TraceRow>, usize)> = config
        .seeds
        .par_iter()
        .map(|&seed| run_seed(config, seed, &refs))
        .collect::<Result<_>>()?;
    let mut trace = RunTrace::default();
    for (rows, changes) in per_seed {
        trace.rows.extend(rows);
        trace.change_events.push(changes);
    }
    Ok(trace)
}

/// Runs the cell and writes its CSV; returns the written path.
pub fn run_and_write(config: &ExperimentConfig) -> Result<(RunTrace, PathBuf)> {
    let trace = run_experiment(config)?;
    let path = config.trace_file();
    trace.write_csv(&path)?;
    Ok((trace, path))
}

/// Linear interpolation between order statistics of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median_iqr(values: &[f64]) -> (f64, f64) {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    (quantile(&v, 0.5), quantile(&v, 0.75) - quantile(&v, 0.25))
}

/// Rows recorded at the final generation of each time step, per run.
pub fn step_final_rows(rows: &[TraceRow]) -> BTreeMap<&str, BTreeMap<usize, &TraceRow>> {
    let mut by_run: BTreeMap<&str, BTreeMap<usize, &TraceRow>> = BTreeMap::new();
    for r in rows {
        let slot = by_run.entry(r.run_id.as_str()).or_default().entry(r.time_step).or_insert(r);
        if r.generation > slot.generation {
            *slot = r;
        }
    }
    by_run
}

/// MIGD and MHV per run id.
pub fn run_scores(rows: &[TraceRow]) -> Result<BTreeMap<String, (f64, f64)>> {
    step_final_rows(rows)
        .into_iter()
        .map(|(run, steps)| {
            let recs: Vec<metrics::MetricRecord> = steps
                .values()
                .map(|r| metrics::MetricRecord { time_step: r.time_step, m: r.m, igd: r.igd, hv_norm: r.hv_norm })
                .collect();
            Ok((run.to_string(), (metrics::migd(&recs)?, metrics::mhv(&recs)?)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub problem: String,
    pub tau_t: usize,
    pub runs: usize,
    pub migd_median: f64,
    pub migd_iqr: f64,
    pub mhv_median: f64,
    pub mhv_iqr: f64,
    /// Mean over time steps of the IGD rank among algorithms of the same
    /// problem and τ_t (median IGD across seeds per step).
    pub mean_rank: f64,
}

type CellKey = (String, usize, String);

/// Per (algorithm, problem, τ_t) cell: MIGD/MHV median and IQR plus mean rank.
pub fn summarize(rows: &[TraceRow]) -> Result<Vec<SummaryRow>> {
    let finals = step_final_rows(rows);
    let scores = run_scores(rows)?;
    let mut cells: BTreeMap<CellKey, Vec<&str>> = BTreeMap::new();
    for (run, steps) in &finals {
        let r = steps.values().next().expect("run has rows");
        cells.entry((r.problem.clone(), r.tau_t, r.algorithm.clone())).or_default().push(run);
    }

    let mut ranks: BTreeMap<CellKey, f64> = BTreeMap::new();
    let mut groups: BTreeMap<(String, usize), BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    for ((problem, tau_t, algorithm), runs) in &cells {
        let mut per_step: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for run in runs {
            for (t, r) in &finals[run] {
                per_step.entry(*t).or_default().push(r.igd);
            }
        }
        let medians = per_step.values().map(|v| median_iqr(v).0).collect();
        groups.entry((problem.clone(), *tau_t)).or_default().insert(algorithm.clone(), medians);
    }
    for ((problem, tau_t), scores_by_algo) in &groups {
        let steps = scores_by_algo.values().map(Vec::len).min().unwrap_or(0);
        let trimmed: BTreeMap<String, Vec<f64>> =
            scores_by_algo.iter().map(|(a, v)| (a.clone(), v[..steps].to_vec())).collect();
        for (algo, rank) in metrics::rank_algorithms(&trimmed, true)? {
            ranks.insert((problem.clone(), *tau_t, algo), rank);
        }
    }

    Ok(cells
        .into_iter()
        .map(|(key, runs)| {
            let migd: Vec<f64> = runs.iter().map(|r| scores[*r].0).collect();
            let mhv: Vec<f64> = runs.iter().map(|r| scores[*r].1).collect();
            let (migd_median, migd_iqr) = median_iqr(&migd);
            let (mhv_median, mhv_iqr) = median_iqr(&mhv);
            SummaryRow {
                mean_rank: ranks[&key],
                algorithm: key.2,
                problem: key.0,
                tau_t: key.1,
                runs: runs.len(),
                migd_median,
                migd_iqr,
                mhv_median,
                mhv_iqr,
            }
        })
        .collect())
}

pub const SUMMARY_HEADER_NOTE: &str =
    "# quantiles: linear interpolation between order statistics; iqr = q(0.75) - q(0.25)";

pub fn write_summary(path: &Path, summary: &[SummaryRow]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for r in summary {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    let mut text = format!("{SUMMARY_HEADER_NOTE}\n");
    text.push_str(&String::from_utf8(buf).expect("csv output is utf-8"));
    fs::write(path, text)?;
    Ok(())
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub generation: usize,
    pub algorithm: String,
    pub median_igd: f64,
}

/// Median IGD across seeds per (generation, algorithm), grouped by
/// (problem, τ_t).
pub fn trajectories(rows: &[TraceRow]) -> BTreeMap<(String, usize), Vec<TrajectoryRow>> {
    type Samples = BTreeMap<(usize, String), Vec<f64>>;
    let mut acc: BTreeMap<(String, usize), Samples> = BTreeMap::new();
    for r in rows {
        acc.entry((r.problem.clone(), r.tau_t))
            .or_default()
            .entry((r.generation, r.algorithm.clone()))
            .or_default()
            .push(r.igd);
    }
    acc.into_iter()
        .map(|(cell, points)| {
            let rows = points
                .into_iter()
                .map(|((generation, algorithm), v)| TrajectoryRow { generation, algorithm, median_igd: median_iqr(&v).0 })
                .collect();
            (cell, rows)
        })
        .collect()
}

/// Writes one `trajectory_<problem>_tau<τ>.csv` per cell into `out_dir`.
pub fn emit_plot_data(rows: &[TraceRow], out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for ((problem, tau_t), traj) in trajectories(rows) {
        let path = out_dir.join(format!("trajectory_{problem}_tau{tau_t}.csv"));
        let mut w = csv::Writer::from_path(&path)?;
        for r in &traj {
            w.serialize(r)?;
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}

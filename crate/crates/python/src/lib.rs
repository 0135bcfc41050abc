use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dmolab::algorithm::DynamicOptimizer;
use dmolab::dtaea::{Dtaea, DtaeaConfig, Variant};
use dmolab::harness::{self, AlgorithmKind, ExperimentConfig};
use dmolab::metrics::{self, HvOptions};
use dmolab::problems::{ChangeSchedule, DynamicProblem, Environment, ProblemId};
use dmolab::{pareto, RunRng};

fn py_err(e: dmolab::Error) -> PyErr {
    match e {
        dmolab::Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = dmolab::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

fn problem(name: &str, verbatim: bool) -> PyResult<DynamicProblem> {
    Ok(DynamicProblem::new(parse::<ProblemId>(name)?).with_verbatim(verbatim))
}

/// True if objective vector `a` Pareto-dominates `b` (minimization).
#[pyfunction]
fn dominates(a: Vec<f64>, b: Vec<f64>) -> PyResult<bool> {
    if a.len() != b.len() {
        return Err(PyValueError::new_err("objective vectors differ in length"));
    }
    Ok(pareto::dominates_objectives(&a, &b))
}

/// Non-domination levels as lists of indices, best level first.
#[pyfunction]
fn non_dominated_sort(objectives: Vec<Vec<f64>>) -> Vec<Vec<usize>> {
    pareto::sort_objectives(&objectives)
}

#[pyfunction]
#[pyo3(signature = (m, n_pop=None))]
fn generate_weights(m: usize, n_pop: Option<usize>) -> PyResult<Vec<Vec<f64>>> {
    let w = match n_pop {
        Some(n) => dmolab::decomposition::weights_for_population(m, n),
        None => dmolab::decomposition::generate_weights(m),
    };
    Ok(w.map_err(py_err)?.vectors)
}

#[pyfunction]
#[pyo3(signature = (problem_id, x, m, tau=0, table1_verbatim=false))]
fn evaluate(problem_id: &str, x: Vec<f64>, m: usize, tau: usize, table1_verbatim: bool) -> PyResult<Vec<f64>> {
    problem(problem_id, table1_verbatim)?.evaluate(&x, m, tau).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (problem_id, m, count, tau=0, seed=0))]
fn sample_pf(problem_id: &str, m: usize, count: usize, tau: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    problem(problem_id, false)?.sample_pf(m, tau, count, seed).map_err(py_err)
}

#[pyfunction]
fn igd(reference: Vec<Vec<f64>>, approx: Vec<Vec<f64>>) -> PyResult<f64> {
    metrics::igd(&reference, &approx).map_err(py_err)
}

/// Hypervolume w.r.t. `worst`; exact up to three objectives.
#[pyfunction]
#[pyo3(signature = (points, worst, samples=metrics::HV_SAMPLES, seed=metrics::HV_SEED))]
fn hypervolume(points: Vec<Vec<f64>>, worst: Vec<f64>, samples: usize, seed: u64) -> f64 {
    metrics::hypervolume_with(&points, &worst, HvOptions { samples, seed })
}

/// Runs one experiment cell and returns its metric rows as dicts.
#[pyfunction]
#[pyo3(signature = (problem_id, algorithm, tau_t, n_pop, seeds, schedule="eq10", warmup_gens=300, ref_size=1000, hv_samples=metrics::HV_SAMPLES))]
#[allow(clippy::too_many_arguments)]
fn run_experiment<'py>(
    py: Python<'py>,
    problem_id: &str,
    algorithm: &str,
    tau_t: usize,
    n_pop: usize,
    seeds: Vec<u64>,
    schedule: &str,
    warmup_gens: usize,
    ref_size: usize,
    hv_samples: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut config = ExperimentConfig::new(parse(problem_id)?, parse::<AlgorithmKind>(algorithm)?, tau_t, n_pop, seeds);
    config.schedule = ChangeSchedule::parse(schedule, warmup_gens, tau_t).map_err(py_err)?;
    config.warmup_gens = warmup_gens;
    config.ref_size = ref_size;
    config.hv = HvOptions { samples: hv_samples, ..HvOptions::default() };
    config.cache_dir = Some(std::env::temp_dir().join("dmolab-pf-cache"));
    let trace = py.detach(|| harness::run_experiment(&config)).map_err(py_err)?;
    trace
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("run_id", &r.run_id)?;
            d.set_item("algorithm", &r.algorithm)?;
            d.set_item("problem", &r.problem)?;
            d.set_item("tau_t", r.tau_t)?;
            d.set_item("seed", r.seed)?;
            d.set_item("time_step", r.time_step)?;
            d.set_item("generation", r.generation)?;
            d.set_item("m", r.m)?;
            d.set_item("igd", r.igd)?;
            d.set_item("hv_norm", r.hv_norm)?;
            Ok(d)
        })
        .collect()
}

/// A DTAEA run driven step by step from Python.
#[pyclass(name = "Dtaea", unsendable)]
struct PyDtaea {
    inner: Dtaea,
    problem: DynamicProblem,
    env: Environment,
    rng: RunRng,
}

#[pymethods]
impl PyDtaea {
    #[new]
    #[pyo3(signature = (problem_id, n_pop, m, variant="dtaea", seed=1))]
    fn new(problem_id: &str, n_pop: usize, m: usize, variant: &str, seed: u64) -> PyResult<Self> {
        let problem = problem(problem_id, false)?;
        let variant = parse::<Variant>(variant)?;
        let env = Environment::new(0, 1, m, 0);
        if !(dmolab::problems::MIN_OBJECTIVES..=dmolab::problems::MAX_OBJECTIVES).contains(&m) {
            return Err(py_err(dmolab::Error::UnsupportedDimension(m)));
        }
        let mut rng = dmolab::seeded_rng(seed);
        let inner = Dtaea::new(DtaeaConfig::new(n_pop, variant), &problem, &env, &mut rng).map_err(py_err)?;
        Ok(Self { inner, problem, env, rng })
    }

    #[pyo3(signature = (generations=1))]
    fn step(&mut self, generations: usize) {
        for _ in 0..generations {
            self.env.tau += 1;
            self.inner.step(&self.problem, &self.env, &mut self.rng);
        }
    }

    /// Switches to `m` objectives and runs the reconstruction.
    fn change_objectives(&mut self, m: usize) -> PyResult<()> {
        if !(dmolab::problems::MIN_OBJECTIVES..=dmolab::problems::MAX_OBJECTIVES).contains(&m) {
            return Err(py_err(dmolab::Error::UnsupportedDimension(m)));
        }
        let previous = self.env.m;
        self.env = Environment::new(self.env.id + 1, self.env.time_step + 1, m, self.env.tau);
        self.inner.on_change(&self.problem, &self.env, previous, &mut self.rng).map_err(py_err)
    }

    #[getter]
    fn m(&self) -> usize {
        self.env.m
    }

    fn ca_objectives(&self) -> Vec<Vec<f64>> {
        self.inner.state.ca.iter().map(|s| s.f.clone()).collect()
    }

    fn da_objectives(&self) -> Vec<Vec<f64>> {
        self.inner.state.da.iter().map(|s| s.f.clone()).collect()
    }

    fn ca_decisions(&self) -> Vec<Vec<f64>> {
        self.inner.state.ca.iter().map(|s| s.x.clone()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Dtaea({}, m={}, n_pop={})", self.problem.id, self.env.m, self.inner.config.n_pop)
    }
}

#[pymodule]
fn pydmolab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(non_dominated_sort, m)?)?;
    m.add_function(wrap_pyfunction!(generate_weights, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(sample_pf, m)?)?;
    m.add_function(wrap_pyfunction!(igd, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_class::<PyDtaea>()?;
    Ok(())
}

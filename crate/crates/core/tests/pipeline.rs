use std::fs;
use std::process::Command;

use dmolab::algorithm::DynamicOptimizer;
use dmolab::baselines::{Baseline, BaselineAlgo, BaselineConfig};
use dmolab::dtaea::{self, step_generation, DtaeaConfig, Variant};
use dmolab::harness::{self, TraceRow};
use dmolab::problems::{DynamicProblem, Environment, ProblemId};
use dmolab::seeded_rng;

fn fingerprint<'a>(sols: impl IntoIterator<Item = &'a dmolab::Solution>) -> f64 {
    sols.into_iter().flat_map(|s| s.f.iter()).sum()
}

// Recorded from a reference run with seed 7.
const DTAEA_CA: f64 = 35.15657643910557;
const DTAEA_DA: f64 = 33.886463929414575;
const MOEAD_POP: f64 = 899.2042293029234;

#[test]
fn dtaea_two_generation_golden() {
    let problem = DynamicProblem::new(ProblemId::F2);
    let env = Environment::new(0, 1, 3, 0);
    let config = DtaeaConfig::new(12, Variant::Full);
    let mut rng = seeded_rng(7);
    let mut state = dtaea::initialize(12, &problem, &env, &mut rng).unwrap();
    for _ in 0..2 {
        state = step_generation(&state, &config, &problem, &env, &mut rng);
    }
    let (ca, da) = (fingerprint(&state.ca), fingerprint(&state.da));
    assert_eq!((ca, da), (DTAEA_CA, DTAEA_DA), "{ca:?} {da:?}");
}

#[test]
fn moead_one_generation_golden() {
    let problem = DynamicProblem::new(ProblemId::F2);
    let env = Environment::new(0, 1, 3, 0);
    let mut rng = seeded_rng(7);
    let mut alg = Baseline::new(BaselineConfig::new(BaselineAlgo::Moead, 12), &problem, &env, &mut rng).unwrap();
    alg.step(&problem, &env, &mut rng);
    let pop = fingerprint(alg.output());
    assert_eq!(alg.output().len(), 300);
    assert_eq!(pop, MOEAD_POP, "{pop:?}");
}

#[test]
fn cli_run_summarize_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        "problem = \"F6\"\nalgorithm = \"dnsga2\"\nn_pop = 16\nschedule = \"custom:2,3\"\nwarmup_gens = 12\nref_size = 50\nhv_samples = 2000\n",
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_dmolab");
    let status = Command::new(bin)
        .args(["run", "--config"])
        .arg(&config)
        .args(["--tau", "6", "--seeds", "1..3", "--trajectory", "--out"])
        .arg(&out)
        .env("DMOLAB_CACHE", dir.path().join("cache"))
        .status()
        .unwrap();
    assert!(status.success());

    let rows: Vec<TraceRow> = harness::read_rows(&out.join("F6_dnsga2_tau6.csv")).unwrap();
    assert_eq!(rows.len(), 3 * 18);
    assert!(rows.iter().all(|r| r.wall_ms == 0.0 && r.tau_t == 6));
    let finals: Vec<&TraceRow> = rows.iter().filter(|r| !r.hv_norm.is_nan()).collect();
    assert_eq!(finals.len(), 6);
    assert!(finals.iter().all(|r| r.generation == 12 || r.generation == 18));
    assert!(fs::read_dir(dir.path().join("cache")).unwrap().count() > 0);

    let summary = dir.path().join("summary.csv");
    assert!(Command::new(bin).args(["summarize", "--input"]).arg(&out).arg("--out").arg(&summary).status().unwrap().success());
    let s = harness::read_summary(&summary).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!((s[0].runs, s[0].mean_rank), (3, 1.0));

    let plots = dir.path().join("plots");
    assert!(Command::new(bin).args(["plot-data", "--input"]).arg(&out).arg("--out").arg(&plots).status().unwrap().success());
    let text = fs::read_to_string(plots.join("trajectory_F6_tau6.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("generation,algorithm,median_igd"));
    assert_eq!(text.lines().count(), 1 + 18);

    let weights = Command::new(bin).args(["weights", "--m", "4"]).output().unwrap();
    assert_eq!(String::from_utf8(weights.stdout).unwrap().lines().count(), 1 + 286);

    let bad = Command::new(bin).args(["run", "--problem", "F9", "--out"]).arg(&out).output().unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("F9"));
}

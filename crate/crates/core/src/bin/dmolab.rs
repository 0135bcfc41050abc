use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dmolab::decomposition::{generate_weights, weights_for_population};
use dmolab::harness::{self, ConfigFile};

#[derive(Parser)]
#[command(name = "dmolab", version, about = "Dynamic many-objective optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one (problem, algorithm, tau_t) cell over a list of seeds.
    Run(Box<RunArgs>),
    /// Aggregate result CSVs into a MIGD/MHV summary table.
    Summarize {
        /// Result directory or single result file.
        #[arg(long, default_value = "results")]
        input: PathBuf,
        #[arg(long, default_value = "results/summary.csv")]
        out: PathBuf,
    },
    /// Write median IGD trajectories, one CSV per (problem, tau_t).
    PlotData {
        #[arg(long, default_value = "results")]
        input: PathBuf,
        #[arg(long, default_value = "results/plots")]
        out: PathBuf,
    },
    /// Print the weight vectors used for `m` objectives.
    Weights {
        #[arg(long)]
        m: usize,
        /// Show the set used with an archive of this size instead.
        #[arg(long)]
        pop: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with run settings; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    pop: Option<usize>,
    /// `eq10`, `eq13` or `custom:3,4,5`.
    #[arg(long)]
    schedule: Option<String>,
    /// `1..10`, `1,2,3` or a single seed.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    warmup: Option<usize>,
    #[arg(long)]
    ref_size: Option<usize>,
    #[arg(long)]
    ref_seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    hv_samples: Option<usize>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Record IGD after every generation.
    #[arg(long)]
    trajectory: bool,
    /// Record wall-clock times.
    #[arg(long)]
    timing: bool,
    /// Use the objective forms exactly as tabulated (halved leading terms).
    #[arg(long)]
    table1_verbatim: bool,
}

impl RunArgs {
    fn into_file(self) -> dmolab::Result<ConfigFile> {
        let base = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let flag = |b: bool| b.then_some(true);
        Ok(base.overridden_by(ConfigFile {
            problem: self.problem,
            algorithm: self.algo,
            tau_t: self.tau,
            n_pop: self.pop,
            schedule: self.schedule,
            seeds: self.seeds,
            warmup_gens: self.warmup,
            ref_size: self.ref_size,
            ref_seed: self.ref_seed,
            out_path: self.out,
            trajectory: flag(self.trajectory),
            timing: flag(self.timing),
            hv_samples: self.hv_samples,
            table1_verbatim: flag(self.table1_verbatim),
            cache_dir: self.cache_dir,
        }))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> dmolab::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = args.into_file()?.into_config()?;
            let (trace, path) = harness::run_and_write(&config)?;
            eprintln!("wrote {} rows to {}", trace.rows.len(), path.display());
        }
        Command::Summarize { input, out } => {
            let rows = harness::read_traces(&input)?;
            let summary = harness::summarize(&rows)?;
            harness::write_summary(&out, &summary)?;
            eprintln!("wrote {} cells to {}", summary.len(), out.display());
        }
        Command::PlotData { input, out } => {
            let rows = harness::read_traces(&input)?;
            for path in harness::emit_plot_data(&rows, &out)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Weights { m, pop, out } => {
            let weights = match pop {
                Some(n) => weights_for_population(m, n)?,
                None => generate_weights(m)?,
            };
            match out {
                Some(path) => weights.write_csv(std::fs::File::create(path)?)?,
                None => weights.write_csv(std::io::stdout().lock())?,
            }
        }
    }
    Ok(())
}

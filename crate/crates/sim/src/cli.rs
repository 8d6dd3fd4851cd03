//! Command-line interface: stock studies plus user-defined scenarios.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::csv::emit_csv;
use crate::figures;
use crate::records::Algorithm;
use crate::runner::run_scenario;
use crate::scenario::{parse_spec, ScenarioSpec, SimError};

#[derive(Parser)]
#[command(
    name = "irs-sim",
    about = "Monte Carlo studies of an IRS-assisted MISO link",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral efficiency vs. AP-user distance (fixed 70 m path sum)
    Fig1(RunOpts),
    /// Spectral efficiency and solver run time vs. surface size
    Fig2(RunOpts),
    /// Surface elements vs. transmit antennas (three curves, three files)
    Fig3(RunOpts),
    /// Run a scenario described by a JSON config file
    Run {
        /// Path to the scenario JSON
        config: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Args)]
struct RunOpts {
    /// Channel realizations per sweep point
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed for the per-trial seed derivation
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated algorithm list
    /// (fixed_point, rcg, random_phase, grid_oracle, no_irs_mrt)
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algorithm>>,
    /// Output CSV path (aggregates go to the sibling .agg.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver stopping threshold
    #[arg(long)]
    eps: Option<f64>,
    /// Solver iteration budget
    #[arg(long)]
    max_iter: Option<usize>,
}

impl RunOpts {
    fn apply(&self, spec: &mut ScenarioSpec) {
        if let Some(t) = self.trials {
            spec.trials = t;
        }
        if let Some(s) = self.seed {
            spec.base_seed = s;
        }
        if let Some(a) = &self.algos {
            spec.algorithms = a.clone();
        }
        if let Some(e) = self.eps {
            spec.eps = e;
        }
        if let Some(m) = self.max_iter {
            spec.max_iter = m;
        }
    }

    fn out_or(&self, default: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(default))
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), SimError> {
    match cli.command {
        Command::Fig1(opts) => {
            let mut spec = figures::fig1_spec(
                opts.trials.unwrap_or(figures::DEFAULT_TRIALS),
                opts.seed.unwrap_or(figures::DEFAULT_SEED),
            );
            opts.apply(&mut spec);
            run_and_emit(&spec, &opts.out_or("fig1.csv"))
        }
        Command::Fig2(opts) => {
            let mut spec = figures::fig2_spec(
                opts.trials.unwrap_or(figures::DEFAULT_TRIALS),
                opts.seed.unwrap_or(figures::DEFAULT_SEED),
            );
            opts.apply(&mut spec);
            run_and_emit(&spec, &opts.out_or("fig2.csv"))
        }
        Command::Fig3(opts) => {
            let trials = opts.trials.unwrap_or(figures::DEFAULT_TRIALS);
            let seed = opts.seed.unwrap_or(figures::DEFAULT_SEED);
            let out = opts.out_or("fig3.csv");
            for (label, mut spec) in figures::fig3_specs(trials, seed) {
                // per-curve algorithm overrides would break the comparison,
                // so only solver knobs apply here
                if let Some(e) = opts.eps {
                    spec.eps = e;
                }
                if let Some(m) = opts.max_iter {
                    spec.max_iter = m;
                }
                let (records, aggregates) = run_scenario(&spec)?;
                let path = curve_path(&out, label);
                emit_csv(&records, &aggregates, &path)?;
                println!("wrote {} ({} rows)", path.display(), records.len());
            }
            Ok(())
        }
        Command::Run { config, opts } => {
            let json = std::fs::read_to_string(&config).map_err(|source| SimError::Io {
                path: config.display().to_string(),
                source,
            })?;
            let mut spec = parse_spec(&json)?;
            opts.apply(&mut spec);
            run_and_emit(&spec, &opts.out_or("scenario.csv"))
        }
    }
}

fn run_and_emit(spec: &ScenarioSpec, out: &Path) -> Result<(), SimError> {
    let (records, aggregates) = run_scenario(spec)?;
    emit_csv(&records, &aggregates, out)?;
    println!("wrote {} ({} rows)", out.display(), records.len());
    Ok(())
}

/// fig3.csv + "no_irs" -> fig3_no_irs.csv
fn curve_path(out: &Path, label: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("fig3");
    let name = format!("{stem}_{label}.csv");
    out.with_file_name(name)
}

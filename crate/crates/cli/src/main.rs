use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crowdtrust::{cmd_compare, cmd_cv, cmd_fuse, cmd_simulate, CliError, Dataset, Result, RunOptions, ScenarioSource};

/// Trust-weighted fusion of crowd observations.
///
/// Exit codes: 0 success, 2 usage, 3 load, 4 numeric, 5 config, 1 other I/O.
#[derive(Debug, Parser)]
#[command(name = "crowdtrust", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic crowd and its answer key.
    Simulate {
        /// Preset crowd: trec-like or exam-like.
        #[arg(long, conflicts_with = "scenario", required_unless_present = "scenario")]
        preset: Option<String>,
        /// TOML scenario file.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Where to write the observations.
        #[arg(long)]
        output: PathBuf,
        /// Where to write the answer key.
        #[arg(long)]
        key: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Train one method, fuse, and write a report.
    Fuse {
        #[command(flatten)]
        data: DataArgs,
        /// majority, em, weighted-avg, exp-weights, svm or professional.
        #[arg(long)]
        method: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Test accuracy of all six methods on one split.
    Compare {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Leave-one-out error along the lambda grid (svm or professional).
    Cv {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        method: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Observations file (query_id,agent_id,label).
    #[arg(long)]
    observations: PathBuf,
    /// Answer key file (query_id,label).
    #[arg(long)]
    key: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Number of training queries drawn from the key.
    #[arg(long)]
    train_count: Option<usize>,
    /// Comma-separated training query ids; overrides --train-count.
    #[arg(long, value_delimiter = ',')]
    train_ids: Option<Vec<String>>,
    /// Fixed regularization strength instead of leave-one-out selection.
    #[arg(long)]
    lambda: Option<f64>,
    /// Learning rate of the exponential-weights method.
    #[arg(long)]
    eta: Option<f64>,
    /// Comma-separated lambda grid for leave-one-out selection.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl From<RunArgs> for RunOptions {
    fn from(a: RunArgs) -> Self {
        RunOptions { train_count: a.train_count, train_ids: a.train_ids, seed: a.seed, lambda: a.lambda, eta: a.eta, grid: a.grid }
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load(data: &DataArgs) -> Result<Dataset> {
    Dataset::load(&data.observations, data.key.as_deref())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { preset, scenario, output, key, seed } => {
            let source = match (preset, scenario) {
                (Some(name), _) => ScenarioSource::Preset(name),
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                    ScenarioSource::File(text)
                }
                (None, None) => return Err(CliError::Usage("give --preset or --scenario".into())),
            };
            cmd_simulate(&source, seed)?.save(&output, Some(&key))
        }
        Command::Fuse { data, method, run } => emit(&cmd_fuse(&load(&data)?, &method, &run.into())?, data.output.as_deref()),
        Command::Compare { data, run } => emit(&cmd_compare(&load(&data)?, &run.into())?, data.output.as_deref()),
        Command::Cv { data, method, run } => emit(&cmd_cv(&load(&data)?, &method, &run.into())?, data.output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

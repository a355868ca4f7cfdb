use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use social_fusion_cli::{cmd_oracle_check, cmd_run, RunOptions};

/// Social-learning data fusion simulator for sensor networks under
/// Byzantine data-falsification attacks.
#[derive(Parser)]
#[command(name = "social-fusion", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a spec file.
    Run(RunArgs),
    /// Alias of `run` for specs whose keys carry sweep axes.
    Sweep(RunArgs),
    /// Validate the likelihood recursion against exhaustive enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment spec file (TOML with flat dotted keys).
    #[arg(long)]
    spec: PathBuf,
    /// Output directory for CSVs, plots and the manifest.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of runs per sweep point.
    #[arg(long)]
    runs: Option<usize>,
    /// Worker threads for the Monte Carlo batches (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Override one spec key, e.g. --set attack.n_star=[0,60,120]. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Args)]
struct OracleArgs {
    /// Longest broadcast string to enumerate (at most 16).
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Number of random (sensor, tau, string) tuples to compare.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) | Command::Sweep(args) => {
            let opts = RunOptions {
                spec: args.spec,
                out: args.out,
                seed: args.seed,
                runs: args.runs,
                jobs: args.jobs,
                sets: args.sets,
            };
            cmd_run(&opts).map(|artifacts| {
                println!(
                    "wrote {} sweep point(s), {} and {}",
                    artifacts.points.len(),
                    artifacts.summary_csv.display(),
                    artifacts.manifest.display()
                );
            })
        }
        Command::OracleCheck(args) => {
            cmd_oracle_check(args.n_max, args.trials, args.seed).map(|_| ())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("social-fusion: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use wforge::commands::{
    cmd_adjust, cmd_compare, cmd_gen_data, cmd_report, cmd_rfe, cmd_train, cmd_verify, Reference,
};
use wforge::config::PipelineConfig;
use wforge::CliError;

#[derive(Parser)]
#[command(
    name = "wforge",
    version,
    about = "Construct, bias-correct, prune, and verify entanglement witnesses"
)]
struct Cli {
    /// Pipeline configuration file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed; overrides the config file.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Worker threads (default: all cores; WFORGE_THREADS as fallback).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Run/output directory; overrides the config file.
    #[arg(long, global = true, value_name = "DIR")]
    output: Option<PathBuf>,

    /// Config overrides, e.g. --set svm.epochs=300 --set features=full
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate training data (separable + entangled sample files).
    GenData,
    /// Train the hyperplane and write the pre-adjustment witness.
    Train,
    /// Bias-correct a witness with the mixed-state optimizer.
    Adjust { witness: PathBuf },
    /// Prune a witness by recursive feature elimination.
    Rfe { witness: PathBuf },
    /// Check a witness against fresh separable and entangled test sets.
    Verify { witness: PathBuf },
    /// Compare witness coefficients against a reference.
    Compare {
        witness: PathBuf,
        /// `mermin` or a path to a witness file.
        #[arg(long, default_value = "mermin")]
        reference: String,
    },
    /// Aggregate the artifacts of a run directory into one report.
    Report { run_dir: PathBuf },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli.threads.or_else(|| {
        std::env::var("WFORGE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    wforge_core::batch::configure_threads(threads);

    if let Command::Report { run_dir } = &cli.command {
        return cmd_report(run_dir);
    }
    let config = PipelineConfig::resolve(
        cli.config.as_deref(),
        &cli.set,
        cli.seed,
        cli.output.as_deref(),
    )?;
    match &cli.command {
        Command::GenData => cmd_gen_data(&config),
        Command::Train => cmd_train(&config),
        Command::Adjust { witness } => cmd_adjust(witness, &config),
        Command::Rfe { witness } => cmd_rfe(witness, &config),
        Command::Verify { witness } => cmd_verify(witness, &config),
        Command::Compare { witness, reference } => {
            cmd_compare(witness, &Reference::parse(reference), &config)
        }
        Command::Report { .. } => unreachable!("handled above"),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit as i32);
        }
    }
}

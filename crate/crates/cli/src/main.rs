//! `todolens`: mine TODO comments from git histories, classify them, and
//! report how they were resolved.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ClassifyArgs, Ctx, LifecycleArgs, MineArgs, ReportArgs, StatsArgs, TrainArgs, Usage};

#[derive(Debug, Parser)]
#[command(name = "todolens", version, about = "Mine, classify and track TODO comments in git histories")]
struct Cli {
    /// Seed for training initialisation and fold assignment
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// TOML file with [mining], [classifier], [lifecycle] and [report] sections
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract introduced/eliminated TODO events from repositories
    Mine(MineArgs),
    /// Attach a form/quality verdict to every introduced TODO
    Classify(ClassifyArgs),
    /// Pair introductions with removals and summarise lifetimes
    Lifecycle(LifecycleArgs),
    /// High- vs low-quality hypothesis tests, or rater agreement
    Stats(StatsArgs),
    /// Render distribution, lifecycle, test and evaluation tables
    Report(ReportArgs),
    /// Train the lexical model or cross-validate a classifier
    Train(TrainArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("todolens: {e:#}");
            // bad flag combinations are usage errors, everything else is data
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let ctx = Ctx {
        config: config::Config::load(cli.config.as_deref())?,
        seed: cli.seed,
    };
    match cli.command {
        Command::Mine(a) => commands::mine(&ctx, a),
        Command::Classify(a) => commands::classify(&ctx, a),
        Command::Lifecycle(a) => commands::lifecycle(&ctx, a),
        Command::Stats(a) => commands::stats(&ctx, a),
        Command::Report(a) => commands::report(&ctx, a),
        Command::Train(a) => commands::train(&ctx, a),
    }
}

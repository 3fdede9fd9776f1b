//! Command-line front end: consistency reports, growth trajectories, and
//! the random-phase statistical checks.
//!
//! Exit codes: 0 when everything passes, 1 when a check or simulation
//! fails on its merits, 2 for usage and configuration errors.

mod check;
mod config;
mod ensemble_cmd;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "fluctuaverse",
    version,
    about = "Units-aware consistency checks and fluctuation-growth simulations in Gaussian CGS"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every registered consistency check and report the dex gaps
    Check(check::CheckArgs),
    /// Integrate the square-root growth law for the fluctuation count
    Simulate(simulate::SimulateArgs),
    /// Run the random-phase and count-sampler statistical checks
    Ensemble(ensemble_cmd::EnsembleArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(args) => check::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Ensemble(args) => ensemble_cmd::run(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

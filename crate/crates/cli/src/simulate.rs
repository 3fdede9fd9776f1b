//! The `simulate` subcommand: integrate the square-root growth law and
//! emit the trajectory as CSV plus a short summary.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use fluctuaverse::growth::{self, GrowthError, GrowthMode, GrowthParams, TrajectoryPoint};

use crate::config::{self, CliError};

#[derive(Args)]
pub struct SimulateArgs {
    /// Integration mode: exact, rk4, or stochastic
    #[arg(long)]
    pub mode: String,
    /// Mass symbol from the constant registry, e.g. m_pi
    #[arg(long, value_name = "SYMBOL")]
    pub mass: String,
    /// End time in seconds
    #[arg(long = "t-end", value_name = "SEC")]
    pub t_end: f64,
    /// Step size in seconds
    #[arg(long, value_name = "SEC")]
    pub dt: f64,
    /// Starting fluctuation count
    #[arg(long, default_value_t = 0.0)]
    pub n0: f64,
    /// Base seed for the stochastic mode
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Ensemble size for the stochastic mode
    #[arg(long, default_value_t = 256)]
    pub ensemble: usize,
    /// Store every STRIDE-th step; the final step is always stored
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Write the trajectory CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Constants override file applied on top of the built-in table
    #[arg(long, value_name = "FILE")]
    pub constants: Option<PathBuf>,
}

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    let reg = config::build_registry(args.constants.as_deref())?;
    let mode = GrowthMode::from_str(&args.mode).map_err(CliError::Usage)?;
    let mass = reg
        .quantity(&args.mass)
        .map_err(|err| CliError::Usage(err.to_string()))?;
    let params = GrowthParams {
        mass,
        n0: args.n0,
        t_end: args.t_end,
        dt: args.dt,
        mode,
        seed: args.seed,
        ensemble_size: args.ensemble,
        stride: args.stride,
    };

    let (csv, summary) = match mode {
        GrowthMode::Exact | GrowthMode::Rk4 => {
            let points = growth::integrate(&reg, &params).map_err(map_growth_error)?;
            let summary = base_summary(args, &points);
            (growth::trajectory_csv(&points), summary)
        }
        GrowthMode::Stochastic => {
            let run = growth::simulate_stochastic(&reg, &params).map_err(map_growth_error)?;
            let mut csv = growth::trajectory_csv(&run.mean);
            csv.push_str(&format!("# ensemble: {}\n", run.ensemble_size()));
            csv.push_str(&format!(
                "# mean sqrt(N) at t_end: {:e}\n",
                run.mean_sqrt_n_end
            ));
            csv.push_str(&format!(
                "# std sqrt(N) at t_end: {:e}\n",
                run.std_sqrt_n_end
            ));
            let mut summary = base_summary(args, &run.mean);
            summary.push(format!("ensemble: {}", run.ensemble_size()));
            summary.push(format!(
                "mean sqrt(N) at t_end: {:.4e}",
                run.mean_sqrt_n_end
            ));
            summary.push(format!("std sqrt(N) at t_end: {:.4e}", run.std_sqrt_n_end));
            summary.push(format!("se sqrt(N) at t_end: {:.4e}", run.se_sqrt_n_end()));
            (csv, summary)
        }
    };

    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|err| {
                CliError::Usage(format!("cannot write {}: {err}", path.display()))
            })?;
            for line in &summary {
                println!("{line}");
            }
        }
        None => {
            print!("{csv}");
            // Keep stdout parseable as CSV: summary rides along as comments.
            for line in &summary {
                println!("# {line}");
            }
        }
    }
    Ok(())
}

/// Parameter problems exit 2; a run that starts and then breaks down
/// exits 1.
fn map_growth_error(err: GrowthError) -> CliError {
    match err {
        GrowthError::Integration { .. } | GrowthError::Stability { .. } => {
            CliError::Failure(err.to_string())
        }
        _ => CliError::Usage(err.to_string()),
    }
}

fn base_summary(args: &SimulateArgs, points: &[TrajectoryPoint]) -> Vec<String> {
    let last = points.last().expect("a trajectory is never empty");
    vec![
        format!("mode: {}", args.mode),
        format!("mass: {}", args.mass),
        format!("points: {}", points.len()),
        format!("final t: {:.4e} s", last.t),
        format!("final N: {:.4e}", last.n),
        format!("sqrt(N) at t_end: {:.4e}", last.n.sqrt()),
        format!("final R: {:.4e} cm", last.r),
        format!("final H_local: {:.4e} 1/s", last.h_local),
    ]
}

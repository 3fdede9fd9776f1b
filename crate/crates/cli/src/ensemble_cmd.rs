//! The `ensemble` subcommand: statistical checks on the random-phase
//! machinery and the fluctuation-count sampler. All five checks are
//! deterministic for a fixed seed.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use fluctuaverse::ensemble::{self, HermitianOperator, SamplerParams};

use crate::config::CliError;

#[derive(Args)]
pub struct EnsembleArgs {
    /// Base seed for every statistical check
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Monte Carlo draws per statistical check
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Inverse-count scale of the fluctuation sampler
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Write the sampled count histogram CSV here
    #[arg(long = "hist-out", value_name = "FILE")]
    pub hist_out: Option<PathBuf>,
}

/// Instances for the coherent-versus-incoherent sweep, cycling dimensions
/// 4 through 8.
const EQUIVALENCE_INSTANCES: u64 = 20;

pub fn run(args: &EnsembleArgs) -> Result<(), CliError> {
    let usage = |err: ensemble::EnsembleError| CliError::Usage(err.to_string());
    let mut rows: Vec<(&str, bool, String)> = Vec::new();

    // Same-index phase products must average to exactly one.
    let diag = ensemble::phase_correlation(3, 3, args.samples, args.seed).map_err(usage)?;
    rows.push((
        "phase_diagonal",
        diag.re == 1.0 && diag.im == 0.0,
        format!(
            "value {:e} + {:e}i (exact unity required)",
            diag.re, diag.im
        ),
    ));

    // Distinct-index products decay like Monte Carlo noise.
    let off = ensemble::phase_correlation(0, 1, args.samples, args.seed.wrapping_add(1))
        .map_err(usage)?;
    let bound = 5.0 / (args.samples as f64).sqrt();
    rows.push((
        "phase_off_diagonal",
        off.norm() <= bound,
        format!("modulus {:.4e} bound {:.4e}", off.norm(), bound),
    ));

    // Phase-averaged coherent expectations against the diagonal average.
    let draws = args.samples.clamp(1, 10_000);
    let mut within = 0u64;
    let mut max_z = 0.0f64;
    for i in 0..EQUIVALENCE_INSTANCES {
        let dim = 4 + (i % 5) as usize;
        let op = HermitianOperator::random(dim, args.seed.wrapping_add(1000 + i)).map_err(usage)?;
        let report =
            ensemble::expectation_equivalence(&op, draws, args.seed.wrapping_add(2000 + i))
                .map_err(usage)?;
        if report.passes(3.0) {
            within += 1;
        }
        if report.std_error.is_finite() && report.std_error > 0.0 {
            max_z = max_z.max(report.abs_difference / report.std_error);
        }
    }
    rows.push((
        "coherent_incoherent",
        within == EQUIVALENCE_INSTANCES,
        format!(
            "{within}/{EQUIVALENCE_INSTANCES} instances within 3 standard errors (max z {max_z:.2})"
        ),
    ));

    // Count sampler spread against the half-normal prediction.
    let stats = ensemble::particlet_count_sampler(&SamplerParams {
        mu: args.mu,
        seed: args.seed.wrapping_add(3000),
        samples: args.samples,
        integer_counts: false,
    })
    .map_err(usage)?;
    let sigma = (args.mu * std::f64::consts::SQRT_2).recip();
    let theory_std = sigma * (1.0 - 2.0 / std::f64::consts::PI).sqrt();
    let z = if stats.std_se.is_finite() && stats.std_se > 0.0 {
        (stats.std - theory_std).abs() / stats.std_se
    } else {
        0.0
    };
    rows.push((
        "count_spread",
        z <= 3.0,
        format!("std {:.4e} theory {:.4e} z {z:.2}", stats.std, theory_std),
    ));

    // The typical count stays within a factor two of 1/mu.
    let ratio = stats.rms * args.mu;
    rows.push((
        "count_scale",
        (0.5..=2.0).contains(&ratio),
        format!(
            "rms {:.4e} target {:.4e} ratio {ratio:.4}",
            stats.rms,
            args.mu.recip()
        ),
    ));

    if let Some(path) = &args.hist_out {
        fs::write(path, ensemble::histogram_csv(&stats.histogram))
            .map_err(|err| CliError::Usage(format!("cannot write {}: {err}", path.display())))?;
    }

    let passed = rows.iter().filter(|(_, ok, _)| *ok).count();
    for (name, ok, details) in &rows {
        println!(
            "{name:<20} {:<4}  {details}",
            if *ok { "pass" } else { "fail" }
        );
    }
    println!("summary: {passed}/{} checks pass", rows.len());

    if passed < rows.len() {
        return Err(CliError::Failure(format!(
            "{} of {} statistical checks failed",
            rows.len() - passed,
            rows.len()
        )));
    }
    Ok(())
}

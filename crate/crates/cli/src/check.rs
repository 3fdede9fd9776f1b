//! The `check` subcommand: run the full consistency catalog and render the
//! report as text, JSON, or CSV.

use std::path::PathBuf;

use clap::Args;
use fluctuaverse::{Catalog, RelationReport, Verdict};

use crate::config::{self, CliError, Format};

#[derive(Args)]
pub struct CheckArgs {
    /// Constants override file applied on top of the built-in table
    #[arg(long, value_name = "FILE")]
    pub constants: Option<PathBuf>,
    /// Per-check tolerance override as ID=DEX; repeatable
    #[arg(long = "tolerance", value_name = "ID=DEX")]
    pub tolerance: Vec<String>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub fn run(args: &CheckArgs) -> Result<(), CliError> {
    let reg = config::build_registry(args.constants.as_deref())?;
    let tolerances = config::parse_tolerances(&args.tolerance)?;
    let catalog = Catalog::standard();
    // Evaluation errors here come from configuration (bad override ids,
    // bounds, or constants), not from a failed check.
    let reports = catalog
        .run_all(&reg, &tolerances)
        .map_err(|err| CliError::Usage(err.to_string()))?;

    match args.format {
        Format::Text => print!("{}", render_text(&reports)),
        Format::Json => {
            let body = serde_json::to_string_pretty(&reports)
                .map_err(|err| CliError::Usage(err.to_string()))?;
            println!("{body}");
        }
        Format::Csv => print!("{}", render_csv(&reports)),
    }

    let failed = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    if failed > 0 {
        return Err(CliError::Failure(format!(
            "{failed} of {} checks exceeded their dex tolerance",
            reports.len()
        )));
    }
    Ok(())
}

fn render_text(reports: &[RelationReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:>12} {:>12} {:>9} {:>9}  {:<7} {}\n",
        "check", "lhs", "rhs", "gap_dex", "tol_dex", "verdict", "anchor"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<22} {:>12.3e} {:>12.3e} {:>9.4} {:>9.4}  {:<7} {}\n",
            r.id,
            r.lhs.value(),
            r.rhs.value(),
            r.gap_dex,
            r.tolerance_dex,
            r.verdict.to_string(),
            r.anchor
        ));
    }
    let passed = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    out.push_str(&format!("{passed}/{} checks pass\n", reports.len()));
    out
}

fn render_csv(reports: &[RelationReport]) -> String {
    let mut out = String::from(
        "id,lhs_value,lhs_dim,rhs_value,rhs_dim,gap_dex,tolerance_dex,verdict,anchor\n",
    );
    for r in reports {
        out.push_str(&format!(
            "{},{:e},{},{:e},{},{:e},{:e},{},{}\n",
            r.id,
            r.lhs.value(),
            r.lhs.dim().token_string(),
            r.rhs.value(),
            r.rhs.dim().token_string(),
            r.gap_dex,
            r.tolerance_dex,
            r.verdict,
            r.anchor
        ));
    }
    out
}

//! Shared plumbing: error-to-exit-code mapping, constants loading, and
//! tolerance override parsing.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use fluctuaverse::Registry;

/// Environment variable naming a constants override file applied when
/// `--constants` is absent.
pub const CONSTANTS_ENV: &str = "FLUCTUAVERSE_CONSTANTS";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration; exits 2.
    Usage(String),
    /// The run worked but a check or simulation failed; exits 1.
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Failure(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failure(_) => ExitCode::from(1),
        }
    }
}

/// Built-in constants, then the override file: the `--constants` flag wins
/// over the environment variable; neither means defaults only.
pub fn build_registry(constants: Option<&Path>) -> Result<Registry, CliError> {
    let mut reg = Registry::with_defaults();
    let path = constants
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CONSTANTS_ENV).map(PathBuf::from));
    if let Some(path) = path {
        reg.load_overrides(&path)
            .map_err(|err| CliError::Usage(format!("constants file {}: {err}", path.display())))?;
    }
    Ok(reg)
}

/// Parse repeated `ID=DEX` tolerance overrides.
pub fn parse_tolerances(pairs: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for pair in pairs {
        let (id, dex) = pair.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "tolerance override '{pair}' is not of the form ID=DEX"
            ))
        })?;
        let id = id.trim();
        let value: f64 = dex.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "tolerance override '{pair}' has a non-numeric bound"
            ))
        })?;
        if id.is_empty() {
            return Err(CliError::Usage(format!(
                "tolerance override '{pair}' names no check"
            )));
        }
        map.insert(id.to_string(), value);
    }
    Ok(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

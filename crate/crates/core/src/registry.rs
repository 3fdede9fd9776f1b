//! Named physical constants and observational anchors, with file overrides.
//!
//! Every number the engine consumes lives here, tagged with where it came
//! from. Defaults are compiled in; a plain-text override file can replace
//! any of them or add new symbols at runtime.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quantity::{Dimension, Quantity, Rational};

/// Where a constant's current value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Precise laboratory value entered from standard reference tables.
    StandardTable,
    /// Order-of-magnitude observational anchor adopted as-is.
    Paper,
    /// Replaced or added through an override file.
    ConfigOverride,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            Source::StandardTable => "standard-table",
            Source::Paper => "paper",
            Source::ConfigOverride => "config-override",
        };
        write!(f, "{label}")
    }
}

impl Serialize for Source {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRecord {
    pub symbol: String,
    pub value: Quantity,
    pub source: Source,
    pub note: String,
    /// Relative standard uncertainty, where one is meaningful.
    pub uncertainty: Option<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegistryError {
    #[error("unknown constant \"{symbol}\"; known symbols: {available}")]
    UnknownConstant { symbol: String, available: String },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read override file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("override file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Keyed store of constants. BTreeMap keeps listing and serialization order
/// stable across runs.
#[derive(Debug, Clone)]
pub struct Registry {
    records: BTreeMap<String, ConstantRecord>,
}

/// (symbol, value, dimension, source, note, relative uncertainty).
type TableRow = (
    &'static str,
    f64,
    Dimension,
    Source,
    &'static str,
    Option<f64>,
);

impl Registry {
    /// The shipped CGS table. Precise entries are rounded to four
    /// significant figures so results are reproducible across platforms.
    pub fn with_defaults() -> Self {
        let mut reg = Registry {
            records: BTreeMap::new(),
        };
        let table: &[TableRow] = &[
            (
                "G",
                6.674e-8,
                Dimension::from_ints(-1, 3, -2),
                Source::StandardTable,
                "Newtonian gravitational constant",
                Some(2.2e-5),
            ),
            (
                "c",
                2.998e10,
                Dimension::velocity(),
                Source::StandardTable,
                "speed of light",
                None,
            ),
            (
                "hbar",
                1.055e-27,
                Dimension::angular_momentum(),
                Source::StandardTable,
                "reduced Planck constant",
                None,
            ),
            (
                "e",
                4.803e-10,
                Dimension::charge(),
                Source::StandardTable,
                "elementary charge in esu",
                None,
            ),
            (
                "m_e",
                9.109e-28,
                Dimension::mass(),
                Source::StandardTable,
                "electron mass",
                None,
            ),
            (
                "m_p",
                1.673e-24,
                Dimension::mass(),
                Source::StandardTable,
                "proton mass",
                None,
            ),
            (
                "m_pi",
                2.488e-25,
                Dimension::mass(),
                Source::StandardTable,
                "charged pion mass, 139.57 MeV/c^2 in grams",
                None,
            ),
            (
                "l_planck",
                1.616e-33,
                Dimension::length(),
                Source::StandardTable,
                "Planck length",
                None,
            ),
            (
                "a0_e",
                6.443005541434884e-22,
                Dimension::time(),
                Source::StandardTable,
                "electron rest-energy oscillation scale, hbar/(2 m_e c^2)",
                None,
            ),
            (
                "R_obs",
                1e28,
                Dimension::length(),
                Source::StandardTable,
                "observable radius; set to the horizon scale G*M_obs/c^2 rounded to one digit, no independent anchor",
                None,
            ),
            (
                "H_obs",
                2.27e-18,
                Dimension::inverse_time(),
                Source::StandardTable,
                "Hubble rate, 70 km/s/Mpc in CGS",
                None,
            ),
            (
                "N_obs",
                1e80,
                Dimension::dimensionless(),
                Source::Paper,
                "elementary-particle count of the observable universe",
                None,
            ),
            (
                "M_obs",
                1e56,
                Dimension::mass(),
                Source::Paper,
                "mass of the observable universe",
                None,
            ),
            (
                "T_obs",
                1e17,
                Dimension::time(),
                Source::Paper,
                "age of the universe",
                None,
            ),
            (
                "tau_fluct",
                1e-11,
                Dimension::time(),
                Source::Paper,
                "elementary fluctuation timescale; c*tau_fluct sets the background-radiation wavelength",
                None,
            ),
        ];
        for (symbol, value, dim, source, note, uncertainty) in table {
            let value =
                Quantity::new(*value, *dim).expect("default constants are finite by construction");
            reg.records.insert(
                (*symbol).to_string(),
                ConstantRecord {
                    symbol: (*symbol).to_string(),
                    value,
                    source: *source,
                    note: (*note).to_string(),
                    uncertainty: *uncertainty,
                },
            );
        }
        reg
    }

    pub fn get(&self, symbol: &str) -> Result<&ConstantRecord, RegistryError> {
        self.records
            .get(symbol)
            .ok_or_else(|| RegistryError::UnknownConstant {
                symbol: symbol.to_string(),
                available: self.records.keys().cloned().collect::<Vec<_>>().join(", "),
            })
    }

    /// The value alone, for arithmetic.
    pub fn quantity(&self, symbol: &str) -> Result<Quantity, RegistryError> {
        Ok(self.get(symbol)?.value)
    }

    /// All records in stable (alphabetical) order.
    pub fn list(&self) -> Vec<&ConstantRecord> {
        self.records.values().collect()
    }

    /// Parse override text and apply it. Either the whole text applies or
    /// nothing does; returns the number of records replaced or added.
    pub fn apply_overrides_str(&mut self, text: &str) -> Result<usize, ConfigError> {
        let mut parsed = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if let Some(record) = parse_line(raw, line_no)? {
                parsed.push(record);
            }
        }
        let applied = parsed.len();
        for record in parsed {
            self.records.insert(record.symbol.clone(), record);
        }
        Ok(applied)
    }

    pub fn load_overrides(&mut self, path: &Path) -> Result<usize, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_overrides_str(&text)
    }

    /// Serialize every record in override-file syntax. Values print in
    /// shortest-round-trip form, so parsing the output back reproduces each
    /// value bit for bit.
    pub fn to_override_string(&self) -> String {
        let mut out =
            String::from("# constants in Gaussian CGS: symbol = value [g^a cm^b s^c]  # note\n");
        for record in self.records.values() {
            out.push_str(&record.symbol);
            out.push_str(" = ");
            out.push_str(&format!("{:e}", record.value.value()));
            let dim = record.value.dim();
            if !dim.is_dimensionless() {
                out.push(' ');
                out.push_str(&dim.token_string());
            }
            if !record.note.is_empty() {
                out.push_str("  # ");
                out.push_str(&record.note);
            }
            out.push('\n');
        }
        out
    }
}

/// One override line: `symbol = <value> [dim tokens]  [# note]`.
/// Blank lines and lines starting with `#` are skipped.
fn parse_line(raw: &str, line_no: usize) -> Result<Option<ConstantRecord>, ConfigError> {
    let fail = |message: String| ConfigError::Parse {
        line: line_no,
        message,
    };

    let mut line = raw.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let mut note = String::new();
    if let Some(hash) = line.find('#') {
        note = line[hash + 1..].trim().to_string();
        line = line[..hash].trim();
    }
    let Some((symbol_part, rhs)) = line.split_once('=') else {
        return Err(fail("expected `symbol = value`".to_string()));
    };
    let symbol = symbol_part.trim();
    if symbol.is_empty() || symbol.contains(char::is_whitespace) {
        return Err(fail(format!("bad symbol \"{symbol}\"")));
    }
    let mut tokens = rhs.split_whitespace();
    let Some(value_token) = tokens.next() else {
        return Err(fail(format!("no value for \"{symbol}\"")));
    };
    let value: f64 = value_token
        .parse()
        .map_err(|_| fail(format!("cannot parse \"{value_token}\" as a number")))?;
    if !value.is_finite() {
        return Err(fail(format!("value for \"{symbol}\" must be finite")));
    }
    let dim = parse_dim_tokens(tokens).map_err(fail)?;
    let value = Quantity::new(value, dim).expect("finiteness checked above");
    Ok(Some(ConstantRecord {
        symbol: symbol.to_string(),
        value,
        source: Source::ConfigOverride,
        note,
        uncertainty: None,
    }))
}

/// Tokens like `g`, `cm^3`, `s^-2`, `g^1/2`. Each base may appear once;
/// absent bases have exponent zero.
fn parse_dim_tokens<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<Dimension, String> {
    let zero = Rational::from_integer(0);
    let (mut mass, mut length, mut time) = (zero, zero, zero);
    let mut seen: Vec<&str> = Vec::new();
    for token in tokens {
        let (base, exp_text) = match token.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (token, None),
        };
        if seen.contains(&base) {
            return Err(format!("base \"{base}\" given twice"));
        }
        let exp = match exp_text {
            None => Rational::from_integer(1),
            Some(text) => parse_exponent(text)
                .ok_or_else(|| format!("bad exponent \"{text}\" in \"{token}\""))?,
        };
        match base {
            "g" => mass = exp,
            "cm" => length = exp,
            "s" => time = exp,
            other => return Err(format!("unknown dimension token \"{other}\"")),
        }
        seen.push(base);
    }
    Ok(Dimension::new(mass, length, time))
}

/// `3`, `-2`, `1/2`, `-3/2`. Hand-parsed so a zero denominator is a parse
/// error rather than a panic.
fn parse_exponent(text: &str) -> Option<Rational> {
    match text.split_once('/') {
        None => text.parse::<i64>().ok().map(Rational::from_integer),
        Some((num, den)) => {
            let num: i64 = num.parse().ok()?;
            let den: i64 = den.parse().ok()?;
            if den <= 0 {
                return None;
            }
            Some(Rational::new(num, den))
        }
    }
}

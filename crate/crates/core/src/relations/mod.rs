//! Order-of-magnitude consistency checks.
//!
//! Each check compares two quantities that a fluctuation-driven cosmology
//! claims agree, and records how far apart they are in dex (decimal orders
//! of magnitude). The checks live behind a common [`Relation`] trait and are
//! collected in a [`Catalog`] so callers can run them all, look one up by
//! id, or tighten tolerances per check at runtime.

pub mod ops;

mod catalog;

pub use catalog::Catalog;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quantity::{Dimension, Quantity, QuantityError};
use crate::registry::{Registry, RegistryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Outcome of one consistency check. Both sides always share a dimension,
/// and `verdict` is `Pass` exactly when `gap_dex <= tolerance_dex`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub id: String,
    /// Citation tag naming where the claimed coincidence comes from.
    pub anchor: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub gap_dex: f64,
    pub tolerance_dex: f64,
    pub verdict: Verdict,
}

impl RelationReport {
    pub fn new(
        id: &str,
        anchor: &str,
        lhs: Quantity,
        rhs: Quantity,
        tolerance_dex: f64,
    ) -> Result<Self, EngineError> {
        if !(tolerance_dex.is_finite() && tolerance_dex > 0.0) {
            return Err(EngineError::InvalidTolerance {
                id: id.to_string(),
                value: tolerance_dex,
            });
        }
        let gap_dex = lhs.dex_gap(rhs)?;
        let verdict = if gap_dex <= tolerance_dex {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Ok(RelationReport {
            id: id.to_string(),
            anchor: anchor.to_string(),
            lhs,
            rhs,
            gap_dex,
            tolerance_dex,
            verdict,
        })
    }
}

/// Complex radial coordinate of a spinning charged point mass in the regime
/// where no classical horizon forms. Both parts are lengths; the imaginary
/// part is non-negative by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonResult {
    pub real_part: Quantity,
    pub imag_part: Quantity,
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Quantity(#[from] QuantityError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("no complex horizon: discriminant {discriminant:e} is negative (the mass term dominates spin and charge)")]
    Regime { discriminant: f64 },
    #[error("precondition failed: {what}")]
    Precondition { what: String },
    #[error("no relation with id \"{id}\"")]
    UnknownRelation { id: String },
    #[error("tolerance for \"{id}\" must be a positive number of dex, got {value}")]
    InvalidTolerance { id: String, value: f64 },
}

/// One named consistency check, selectable at runtime.
pub trait Relation {
    /// Stable identifier, used for lookup and tolerance overrides.
    fn id(&self) -> &'static str;
    /// Citation tag printed with the report row.
    fn anchor(&self) -> &'static str;
    /// Loosest round tolerance the shipped constants satisfy; failures at
    /// this level signal regressions, not judgment calls.
    fn default_tolerance_dex(&self) -> f64;
    /// Evaluate against the given constants at the given tolerance.
    fn evaluate(&self, reg: &Registry, tolerance_dex: f64) -> Result<RelationReport, EngineError>;
}

pub(crate) fn expect_dim(q: Quantity, want: Dimension) -> Result<(), EngineError> {
    if q.dim() != want {
        return Err(QuantityError::DimensionMismatch {
            left: q.dim(),
            right: want,
        }
        .into());
    }
    Ok(())
}

pub(crate) fn expect_positive(q: Quantity, what: &str) -> Result<(), EngineError> {
    if q.value() <= 0.0 {
        return Err(EngineError::Precondition {
            what: format!("{what} must be positive, got {:e}", q.value()),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_pass_exactly_up_to_the_tolerance() {
        let a = Quantity::dimensionless(1.0).unwrap();
        let b = Quantity::dimensionless(10.0).unwrap();
        // Gap is exactly 1.0 dex.
        let at = RelationReport::new("x", "row 1", a, b, 1.0).unwrap();
        assert_eq!(at.verdict, Verdict::Pass);
        let below = RelationReport::new("x", "row 1", a, b, 0.999).unwrap();
        assert_eq!(below.verdict, Verdict::Fail);
        assert_eq!(at.gap_dex, 1.0);
    }

    #[test]
    fn report_rejects_mismatched_sides() {
        let a = Quantity::centimeters(1.0).unwrap();
        let b = Quantity::grams(1.0).unwrap();
        assert!(matches!(
            RelationReport::new("x", "row 1", a, b, 1.0),
            Err(EngineError::Quantity(
                QuantityError::DimensionMismatch { .. }
            ))
        ));
    }

    #[test]
    fn report_rejects_bad_tolerances() {
        let a = Quantity::dimensionless(1.0).unwrap();
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                RelationReport::new("x", "row 1", a, a, bad),
                Err(EngineError::InvalidTolerance { .. })
            ));
        }
    }

    #[test]
    fn precondition_helpers_catch_bad_inputs() {
        let zero_mass = Quantity::grams(0.0).unwrap();
        assert!(expect_positive(zero_mass, "mass").is_err());
        assert!(expect_positive(Quantity::grams(1.0).unwrap(), "mass").is_ok());
        assert!(expect_dim(zero_mass, Dimension::mass()).is_ok());
        assert!(expect_dim(zero_mass, Dimension::length()).is_err());
    }
}

//! Gaussian-CGS dimensional algebra.
//!
//! Three base dimensions: mass (g), length (cm), time (s). Charge is a
//! derived quantity in this system (the esu is g^1/2 cm^3/2 s^-1), so
//! exponents must be exact rationals with representable halves, never
//! floating point.

use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact exponent type. All dimension arithmetic happens in these.
pub type Rational = Ratio<i64>;

/// Exponents of (g, cm, s). The all-zero vector is the unique dimensionless
/// element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub mass_exp: Rational,
    pub length_exp: Rational,
    pub time_exp: Rational,
}

impl Dimension {
    pub fn new(mass_exp: Rational, length_exp: Rational, time_exp: Rational) -> Self {
        Dimension {
            mass_exp,
            length_exp,
            time_exp,
        }
    }

    /// Integer-exponent shorthand for the common cases.
    pub fn from_ints(mass: i64, length: i64, time: i64) -> Self {
        Dimension::new(
            Rational::from_integer(mass),
            Rational::from_integer(length),
            Rational::from_integer(time),
        )
    }

    pub fn dimensionless() -> Self {
        Dimension::from_ints(0, 0, 0)
    }

    pub fn mass() -> Self {
        Dimension::from_ints(1, 0, 0)
    }

    pub fn length() -> Self {
        Dimension::from_ints(0, 1, 0)
    }

    pub fn time() -> Self {
        Dimension::from_ints(0, 0, 1)
    }

    pub fn area() -> Self {
        Dimension::from_ints(0, 2, 0)
    }

    pub fn inverse_area() -> Self {
        Dimension::from_ints(0, -2, 0)
    }

    pub fn velocity() -> Self {
        Dimension::from_ints(0, 1, -1)
    }

    pub fn inverse_time() -> Self {
        Dimension::from_ints(0, 0, -1)
    }

    /// erg = g cm^2 s^-2.
    pub fn energy() -> Self {
        Dimension::from_ints(1, 2, -2)
    }

    /// esu = g^1/2 cm^3/2 s^-1.
    pub fn charge() -> Self {
        Dimension::new(Ratio::new(1, 2), Ratio::new(3, 2), Ratio::from_integer(-1))
    }

    /// erg s = g cm^2 s^-1.
    pub fn angular_momentum() -> Self {
        Dimension::from_ints(1, 2, -1)
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Dimension::dimensionless()
    }

    // Named methods rather than operator traits, matching the fallible
    // Quantity API so call sites read the same at both levels.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Dimension::new(
            self.mass_exp + other.mass_exp,
            self.length_exp + other.length_exp,
            self.time_exp + other.time_exp,
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Self) -> Self {
        Dimension::new(
            self.mass_exp - other.mass_exp,
            self.length_exp - other.length_exp,
            self.time_exp - other.time_exp,
        )
    }

    pub fn pow(self, r: Rational) -> Self {
        Dimension::new(self.mass_exp * r, self.length_exp * r, self.time_exp * r)
    }

    pub fn recip(self) -> Self {
        Dimension::dimensionless().div(self)
    }

    /// The `g^a cm^b s^c` form used by override files and machine output.
    /// Empty for the dimensionless element; unit exponents print bare.
    pub fn token_string(&self) -> String {
        let mut parts = Vec::new();
        for (base, exp) in [
            ("g", self.mass_exp),
            ("cm", self.length_exp),
            ("s", self.time_exp),
        ] {
            if exp == Rational::from_integer(0) {
                continue;
            }
            if exp == Rational::from_integer(1) {
                parts.push(base.to_string());
            } else {
                parts.push(format!("{base}^{exp}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            write!(f, "dimensionless")
        } else {
            write!(f, "{}", self.token_string())
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.token_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantityError {
    #[error("dimension mismatch: left is {left}, right is {right}")]
    DimensionMismatch { left: Dimension, right: Dimension },
    #[error("{op} produced a non-finite value")]
    NonFinite { op: &'static str },
    #[error("cannot raise negative value {value:e} to non-integer power {exponent}")]
    NegativeBase { value: f64, exponent: Rational },
    #[error("dex gap needs strictly positive values, got {value:e}")]
    NonPositive { value: f64 },
}

/// A real value carrying a CGS dimension. Every public operation rejects
/// non-finite results, so no NaN or infinity escapes the algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    dim: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension) -> Result<Self, QuantityError> {
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "construction" });
        }
        Ok(Quantity { value, dim })
    }

    pub fn dimensionless(value: f64) -> Result<Self, QuantityError> {
        Quantity::new(value, Dimension::dimensionless())
    }

    pub fn grams(value: f64) -> Result<Self, QuantityError> {
        Quantity::new(value, Dimension::mass())
    }

    pub fn centimeters(value: f64) -> Result<Self, QuantityError> {
        Quantity::new(value, Dimension::length())
    }

    pub fn seconds(value: f64) -> Result<Self, QuantityError> {
        Quantity::new(value, Dimension::time())
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn is_dimensionless(&self) -> bool {
        self.dim.is_dimensionless()
    }

    // Operator traits cannot return Result, and silent overflow is exactly
    // what this type exists to prevent; hence named fallible methods.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Quantity) -> Result<Quantity, QuantityError> {
        let value = self.value * other.value;
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "mul" });
        }
        Ok(Quantity {
            value,
            dim: self.dim.mul(other.dim),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Quantity) -> Result<Quantity, QuantityError> {
        let value = self.value / other.value;
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "div" });
        }
        Ok(Quantity {
            value,
            dim: self.dim.div(other.dim),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Quantity) -> Result<Quantity, QuantityError> {
        if self.dim != other.dim {
            return Err(QuantityError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let value = self.value + other.value;
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "add" });
        }
        Ok(Quantity {
            value,
            dim: self.dim,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Quantity) -> Result<Quantity, QuantityError> {
        self.add(other.scale(-1.0)?)
    }

    /// Raise to an exact rational power; exponents scale exactly, the value
    /// goes through `powi`/`powf`.
    pub fn pow(self, r: Rational) -> Result<Quantity, QuantityError> {
        let value = if r.is_integer() {
            match i32::try_from(*r.numer()) {
                Ok(n) => self.value.powi(n),
                Err(_) => self.value.powf(*r.numer() as f64),
            }
        } else {
            if self.value < 0.0 {
                return Err(QuantityError::NegativeBase {
                    value: self.value,
                    exponent: r,
                });
            }
            self.value.powf(*r.numer() as f64 / *r.denom() as f64)
        };
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "pow" });
        }
        Ok(Quantity {
            value,
            dim: self.dim.pow(r),
        })
    }

    pub fn sqrt(self) -> Result<Quantity, QuantityError> {
        self.pow(Rational::new(1, 2))
    }

    pub fn recip(self) -> Result<Quantity, QuantityError> {
        self.pow(Rational::from_integer(-1))
    }

    /// Multiply by a bare number (a dimensionless scalar).
    pub fn scale(self, k: f64) -> Result<Quantity, QuantityError> {
        let value = self.value * k;
        if !value.is_finite() {
            return Err(QuantityError::NonFinite { op: "scale" });
        }
        Ok(Quantity {
            value,
            dim: self.dim,
        })
    }

    /// |log10(a/b)|, the order-of-magnitude distance. Requires identical
    /// dimensions and strictly positive values; computed as a difference of
    /// logarithms so extreme magnitudes cannot overflow.
    pub fn dex_gap(self, other: Quantity) -> Result<f64, QuantityError> {
        if self.dim != other.dim {
            return Err(QuantityError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        for v in [self.value, other.value] {
            if v <= 0.0 {
                return Err(QuantityError::NonPositive { value: v });
            }
        }
        Ok((self.value.log10() - other.value.log10()).abs())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            write!(f, "{:e}", self.value)
        } else {
            write!(f, "{:e} {}", self.value, self.dim.token_string())
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Quantity", 2)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("dim", &self.dim)?;
        st.end()
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Lebesgue exponent `p` in `[1, ∞]`.
///
/// `p = ∞` is its own variant rather than a large float.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent { p });
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }

    /// Builds the exponent from `1/p` in `[0, 1]`.
    pub fn from_reciprocal(inv_p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&inv_p) {
            return Err(Error::InvalidExponent { p: 1.0 / inv_p });
        }
        if inv_p == 0.0 {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(1.0 / inv_p))
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(p) => Exponent::new(p),
            Exponent::Infinity => Ok(self),
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `p' = p/(p-1)`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
            Exponent::Infinity => Exponent::Finite(1.0),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts decimals, fractions such as `4/3`, and `inf`/`infinity`/`∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Exponent::Infinity),
            _ => {}
        }
        Exponent::new(crate::parse_fraction(t)?)
    }
}

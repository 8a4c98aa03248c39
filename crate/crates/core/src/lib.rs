//! Spectral calculus for the anharmonic oscillator `L = -d²/dx² + |x|` and
//! the Airy operator `A = -d²/dx² + x`.
//!
//! The numerical primitives ([`numerics`], [`airy`], [`spectrum`]) are
//! generic over [`Scalar`]; the aliases below fix them to `f64`, which is
//! the precision every accuracy target in this crate refers to.

pub mod airy;
pub mod airy_operator;
pub mod error;
pub mod multipliers;
pub mod numerics;
pub mod profile_lab;
pub mod scalar;
pub mod spectrum;

pub use error::{Error, Result};
pub use multipliers::{GHSplit, MultiplierProfile, RieszParams, Smoothness, Support};
pub use numerics::{Exponent, QuadratureKind, QuadratureRule};
pub use spectrum::Parity;
pub use scalar::Scalar;

pub type Grid = numerics::Grid<f64>;
pub type GridFunction = numerics::GridFunction<f64>;
pub type AiryEval = airy::AiryEval<f64>;
pub type ZeroList = airy::ZeroList<f64>;
pub type EigenMode = spectrum::EigenMode<f64>;
pub type SpectralBasis = spectrum::SpectralBasis<f64>;

/// Parses a decimal (`0.75`) or a fraction (`4/3`).
pub fn parse_fraction(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a number: '{t}'"));
    match t.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            Ok(num / den)
        }
        None => t.parse().map_err(|_| bad()),
    }
}

//! The Airy function `Ai`, its derivative, negative zeros, and the
//! oscillatory decomposition `Ai(x) = e^{iζ}θ + e^{−iζ}θ̄` for `x < −1`.
//!
//! Evaluation uses three regimes:
//!
//! * `|x| ≤ 1`: Maclaurin series seeded with `Ai(0)`, `Ai'(0)`;
//! * `1 < |x| ≤ 8.5`: Taylor series of the Airy ODE around tabulated
//!   anchors spaced by `1/2`;
//! * `|x| > 8.5`: optimally truncated asymptotic series, with the phase
//!   `2|x|^{3/2}/3` carried in double-word arithmetic so that relative
//!   accuracy survives close to the zeros.

pub mod asymptotic;
mod series;
mod zeros;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use series::{AI0, NEG_AI_PRIME0};
pub use zeros::{ai_prime_zeros, ai_zeros, ZeroKind, ZeroList};

/// Largest `|x|` accepted by [`ai`].
pub const VALIDITY_LIMIT: f64 = 1e4;

const MACLAURIN_LIMIT: f64 = 1.0;
const TAYLOR_LIMIT: f64 = 8.5;

/// Envelope constant in `|θ(x)| ≤ C(1 + |x|)^{−1/4}`, measured on `x ∈ [−10⁴, −1)`.
pub const THETA_ENVELOPE: f64 = 0.36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Maclaurin,
    AnchoredTaylor,
    Asymptotic,
}

impl Regime {
    pub fn of(x: f64) -> Self {
        let ax = x.abs();
        if ax <= MACLAURIN_LIMIT {
            Regime::Maclaurin
        } else if ax <= TAYLOR_LIMIT {
            Regime::AnchoredTaylor
        } else {
            Regime::Asymptotic
        }
    }

    /// Static relative-error bound (in `f64`) away from the zeros of `Ai`, `Ai'`.
    pub fn rel_err(self, x: f64) -> f64 {
        match self {
            Regime::Maclaurin => 1e-14,
            Regime::AnchoredTaylor => 1e-14,
            Regime::Asymptotic if x.abs() <= 200.0 => 5e-14,
            Regime::Asymptotic => 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryEval<T> {
    pub x: T,
    pub ai: T,
    pub ai_prime: T,
    pub est_rel_err: T,
}

/// `Ai(x)` and `Ai'(x)` for `|x| ≤ 10⁴`.
pub fn ai<T: Scalar>(x: T) -> Result<AiryEval<T>> {
    let xf = x.as_f64();
    if !(xf.abs() <= VALIDITY_LIMIT) {
        return Err(Error::ArgumentOutOfRange { x: xf, limit: VALIDITY_LIMIT });
    }
    let regime = Regime::of(xf);
    let (ai, ai_prime) = eval_in(regime, x);
    let est = regime.rel_err(xf).max(32.0 * T::EPS);
    Ok(AiryEval { x, ai, ai_prime, est_rel_err: T::lit(est) })
}

/// `(Ai(x), Ai'(x))` for any finite `x`; arguments beyond the validity
/// range on the decaying side return zeros.
pub fn ai_pair<T: Scalar>(x: T) -> (T, T) {
    let xf = x.as_f64();
    if xf > VALIDITY_LIMIT {
        return (T::zero(), T::zero());
    }
    eval_in(Regime::of(xf), x)
}

/// `Ai(x)`, saturating like [`ai_pair`].
pub fn ai_value<T: Scalar>(x: T) -> T {
    ai_pair(x).0
}

fn eval_in<T: Scalar>(regime: Regime, x: T) -> (T, T) {
    match regime {
        Regime::Maclaurin => series::maclaurin(x),
        Regime::AnchoredTaylor => series::anchored_taylor(x),
        Regime::Asymptotic if x > T::zero() => asymptotic::decaying(x),
        Regime::Asymptotic => asymptotic::oscillating(x),
    }
}

/// `ζ` and `θ` of the decomposition `Ai(x) = e^{iζ}θ + e^{−iζ}θ̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticPieces<T> {
    pub x: T,
    pub zeta: T,
    pub theta: Complex<T>,
}

impl<T: Scalar> AsymptoticPieces<T> {
    /// `e^{iζ}θ + e^{−iζ}θ̄`.
    pub fn reconstruct(&self) -> T {
        let (s, c) = self.zeta.sin_cos();
        T::lit(2.0) * (c * self.theta.re - s * self.theta.im)
    }
}

/// Splits `Ai` on `x < −1` into a phase `ζ = 2|x|^{3/2}/3` and a slowly
/// varying amplitude `θ`.
///
/// `θ` is the truncated asymptotic amplitude plus a real multiple of
/// `e^{−iζ}` absorbing the remainder, so the reconstruction is exact up to
/// rounding even where the series is short.
pub fn asymptotic_pieces<T: Scalar>(x: T) -> Result<AsymptoticPieces<T>> {
    if !(x < -T::one()) {
        return Err(Error::DecompositionDomain { x: x.as_f64() });
    }
    let value = ai(x)?.ai;
    let (zeta, re, im) = asymptotic::theta_series(x);
    let theta = Complex::new(re, im);
    let (s, c) = zeta.sin_cos();
    let approx = T::lit(2.0) * (c * re - s * im);
    let corr = (value - approx) / T::lit(2.0);
    let theta = theta + Complex::new(c, -s) * corr;
    Ok(AsymptoticPieces { x, zeta, theta })
}

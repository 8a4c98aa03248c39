use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ai_pair;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Ai,
    AiPrime,
}

impl ZeroKind {
    fn name(self) -> &'static str {
        match self {
            ZeroKind::Ai => "Ai",
            ZeroKind::AiPrime => "Ai'",
        }
    }

    /// Leading-order location of the `k`-th zero (1-based).
    pub fn initial_guess(self, k: usize) -> f64 {
        let m = match self {
            ZeroKind::Ai => 4.0 * k as f64 - 1.0,
            ZeroKind::AiPrime => 4.0 * k as f64 - 3.0,
        };
        -(3.0 * std::f64::consts::PI * m / 8.0).powf(2.0 / 3.0)
    }

    /// The function whose zeros are sought, and its derivative.
    fn eval<T: Scalar>(self, x: T) -> (T, T) {
        let (a, ap) = ai_pair(x);
        match self {
            ZeroKind::Ai => (a, ap),
            ZeroKind::AiPrime => (ap, x * a),
        }
    }
}

/// The first negative zeros of `Ai` or `Ai'`, ordered by increasing magnitude.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroList<T> {
    pub kind: ZeroKind,
    pub zeros: Vec<T>,
}

impl<T: Scalar> ZeroList<T> {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// CSV `index,zero` with 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,zero\n");
        for (i, z) in self.zeros.iter().enumerate() {
            let _ = writeln!(out, "{},{:.16e}", i + 1, z.as_f64());
        }
        out
    }
}

/// First `count` negative zeros of `Ai`.
pub fn ai_zeros<T: Scalar>(count: usize) -> Result<ZeroList<T>> {
    zeros(ZeroKind::Ai, count)
}

/// First `count` negative zeros of `Ai'`.
pub fn ai_prime_zeros<T: Scalar>(count: usize) -> Result<ZeroList<T>> {
    zeros(ZeroKind::AiPrime, count)
}

fn zeros<T: Scalar>(kind: ZeroKind, count: usize) -> Result<ZeroList<T>> {
    if count == 0 {
        return Err(Error::InvalidParameter("zero count must be at least 1".into()));
    }
    let zeros = (1..=count)
        .into_par_iter()
        .map(|k| refine(kind, k))
        .collect::<Result<Vec<T>>>()?;
    Ok(ZeroList { kind, zeros })
}

/// Newton iteration kept inside a sign-change bracket around the guess.
fn refine<T: Scalar>(kind: ZeroKind, k: usize) -> Result<T> {
    let guess = kind.initial_guess(k);
    // Zeros are spaced by about π/√|x|; the guess is far closer than half that.
    let half = 0.45 * std::f64::consts::PI / guess.abs().max(1.0).sqrt();
    let mut lo = T::lit(guess - half);
    let mut hi = T::lit(guess + half);
    let (mut flo, _) = kind.eval(lo);
    let (fhi, _) = kind.eval(hi);
    let fail = |iterations| Error::ZeroRefinementFailed { kind: kind.name(), index: k, iterations };
    if flo * fhi > T::zero() {
        return Err(fail(0));
    }
    let mut x = T::lit(guess);
    for it in 1..=MAX_ITERATIONS {
        let (f, df) = kind.eval(x);
        if f == T::zero() {
            return Ok(x);
        }
        if (f < T::zero()) == (flo < T::zero()) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if df != T::zero() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / T::lit(2.0)
        };
        let tol = T::lit(2.0 * T::EPS) * x.abs();
        if (next - x).abs() <= tol || (hi - lo) <= tol {
            return Ok(best_neighbour(kind, next));
        }
        x = next;
        let _ = it;
    }
    Err(fail(MAX_ITERATIONS))
}

/// Picks the float adjacent to `x` with the smallest residual.
fn best_neighbour<T: Scalar>(kind: ZeroKind, x: T) -> T {
    let ulp = T::lit(T::EPS) * x.abs();
    let mut best = x;
    let mut res = kind.eval(x).0.abs();
    for cand in [x - ulp, x + ulp] {
        let r = kind.eval(cand).0.abs();
        if r < res {
            best = cand;
            res = r;
        }
    }
    best
}

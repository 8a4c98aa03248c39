//! Eigenpairs of `L = −d²/dx² + |x|`.
//!
//! The eigenfunctions are shifted Airy functions glued at the origin:
//! `φ_n(u) = A_n·Ai(|u| − λ_n)` for `u ≥ 0`, mirrored with sign `(−1)^{n+1}`.
//! Even modes (odd `n`) need `Ai'(−λ) = 0`, odd modes need `Ai(−λ) = 0`,
//! so the spectrum is the merged magnitudes of the two zero sets.

mod norms;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::airy::{ai_pair, ai_prime_zeros, ai_zeros};
use crate::error::{Error, Result};
use crate::numerics::{Grid, GridFunction};
use crate::scalar::Scalar;

pub use norms::{gram_matrix, gram_matrix_on_grid, mode_lp_norm, quadrature_norm_const};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Neumann condition at 0; eigenvalue is a zero of `Ai'(−λ)`.
    Even,
    /// Dirichlet condition at 0; eigenvalue is a zero of `Ai(−λ)`.
    Odd,
}

impl Parity {
    /// Parity of the `n`-th mode (1-based): odd indices are even functions.
    pub fn of_index(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenMode<T> {
    pub n: usize,
    pub lambda: T,
    pub parity: Parity,
    pub norm_const: T,
}

impl<T: Scalar> EigenMode<T> {
    /// Builds the mode from its eigenvalue, normalising with
    /// `∫_x^∞ Ai² = Ai'(x)² − x·Ai(x)²` at `x = −λ`.
    pub fn new(n: usize, lambda: T) -> Self {
        let (a, ap) = ai_pair(-lambda);
        let mass = T::lit(2.0) * (ap * ap + lambda * a * a);
        EigenMode { n, lambda, parity: Parity::of_index(n), norm_const: mass.sqrt().recip() }
    }

    fn reflection(&self) -> T {
        match self.parity {
            Parity::Even => T::one(),
            Parity::Odd => -T::one(),
        }
    }

    /// `φ_n(u)`.
    pub fn eval(&self, u: T) -> T {
        let v = self.norm_const * ai_pair(u.abs() - self.lambda).0;
        if u < T::zero() {
            self.reflection() * v
        } else {
            v
        }
    }

    /// `φ_n'(u)`; at `u = 0` the right-hand derivative.
    pub fn derivative(&self, u: T) -> T {
        let d = self.norm_const * ai_pair(u.abs() - self.lambda).1;
        if u < T::zero() {
            -self.reflection() * d
        } else {
            d
        }
    }

    /// `λ φ(0)² + φ'(0)²`; equals `1/2` under the two-sided normalisation.
    pub fn boundary_energy(&self) -> T {
        let v = self.eval(T::zero());
        let d = self.derivative(T::zero());
        self.lambda * v * v + d * d
    }

    /// Samples `φ_n` on `grid`.
    pub fn sample(&self, grid: Grid<T>) -> Result<GridFunction<T>> {
        GridFunction::sample_real(grid, |u| self.eval(u))
    }
}

/// `φ_n(u)` (free-function form).
pub fn eigenfunction_eval<T: Scalar>(mode: &EigenMode<T>, u: T) -> T {
    mode.eval(u)
}

/// `φ_n'(u)`.
pub fn eigenfunction_derivative<T: Scalar>(mode: &EigenMode<T>, u: T) -> T {
    mode.derivative(u)
}

/// The first modes of `L` in increasing order of eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBasis<T> {
    modes: Vec<EigenMode<T>>,
    cutoff: T,
}

#[derive(Serialize, Deserialize)]
struct ModeRecord {
    n: usize,
    lambda: f64,
    parity: Parity,
    norm_const: f64,
}

impl<T: Scalar> SpectralBasis<T> {
    pub fn modes(&self) -> &[EigenMode<T>] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Largest energy up to which the basis is complete.
    pub fn cutoff(&self) -> T {
        self.cutoff
    }

    /// Mode `n` (1-based).
    pub fn mode(&self, n: usize) -> Result<&EigenMode<T>> {
        n.checked_sub(1).and_then(|i| self.modes.get(i)).ok_or_else(|| {
            Error::RangeViolation(format!("mode {n} outside basis of {} modes", self.modes.len()))
        })
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.modes.iter().map(|m| m.lambda).collect()
    }

    /// `#{n : λ_n ≤ lam}`.
    pub fn counting_function(&self, lam: T) -> Result<usize> {
        if lam > self.cutoff {
            return Err(Error::BasisTooSmall { requested: lam.as_f64(), cutoff: self.cutoff.as_f64() });
        }
        Ok(self.modes.partition_point(|m| m.lambda <= lam))
    }

    /// The sub-basis of modes with `λ_n ≤ cutoff`.
    pub fn truncated(&self, cutoff: T) -> Result<Self> {
        let count = self.counting_function(cutoff)?;
        Ok(SpectralBasis { modes: self.modes[..count].to_vec(), cutoff })
    }

    fn records(&self) -> Vec<ModeRecord> {
        self.modes
            .iter()
            .map(|m| ModeRecord { n: m.n, lambda: m.lambda.as_f64(), parity: m.parity, norm_const: m.norm_const.as_f64() })
            .collect()
    }

    /// JSON array of `{n, lambda, parity, norm_const}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("mode records serialise")
    }

    /// CSV `n,lambda,parity,norm_const`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda,parity,norm_const\n");
        for r in self.records() {
            let _ = writeln!(out, "{},{:.16e},{},{:.16e}", r.n, r.lambda, r.parity.as_str(), r.norm_const);
        }
        out
    }
}

/// `λ_n` for `n = 1..=count` from the zeros of `Ai'` (odd `n`) and `Ai` (even `n`).
fn eigenvalues<T: Scalar>(count: usize) -> Result<Vec<T>> {
    let even = ai_prime_zeros::<T>(count.div_ceil(2))?;
    let odd = if count >= 2 { ai_zeros::<T>(count / 2)?.zeros } else { Vec::new() };
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        let z = if n % 2 == 1 { even.zeros[n / 2] } else { odd[n / 2 - 1] };
        out.push(-z);
    }
    if let Some(w) = out.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::RangeViolation(format!("eigenvalues not interlaced near {}", w[0])));
    }
    Ok(out)
}

/// The first `count` modes; the cutoff is `λ_count`.
pub fn build_basis<T: Scalar>(count: usize) -> Result<SpectralBasis<T>> {
    if count == 0 {
        return Err(Error::InvalidParameter("basis size must be at least 1".into()));
    }
    let modes: Vec<_> = eigenvalues::<T>(count)?
        .into_iter()
        .enumerate()
        .map(|(i, lam)| EigenMode::new(i + 1, lam))
        .collect();
    let cutoff = modes[count - 1].lambda;
    Ok(SpectralBasis { modes, cutoff })
}

/// Every mode with `λ_n ≤ cutoff`.
pub fn build_basis_up_to<T: Scalar>(cutoff: T) -> Result<SpectralBasis<T>> {
    let c = cutoff.as_f64();
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("cutoff must be positive, got {c}")));
    }
    // λ_n ≈ (3πn/4)^{2/3}; overshoot a little and trim.
    let estimate = (4.0 / (3.0 * std::f64::consts::PI) * c.powf(1.5)).ceil() as usize + 4;
    let lams = eigenvalues::<T>(estimate)?;
    if lams[estimate - 1] <= cutoff {
        return Err(Error::RangeViolation(format!("eigenvalue estimate too small for cutoff {c}")));
    }
    let modes = lams
        .into_iter()
        .take_while(|&l| l <= cutoff)
        .enumerate()
        .map(|(i, lam)| EigenMode::new(i + 1, lam))
        .collect();
    Ok(SpectralBasis { modes, cutoff })
}

/// `#{n : λ_n ≤ lam}` (free-function form).
pub fn counting_function<T: Scalar>(basis: &SpectralBasis<T>, lam: T) -> Result<usize> {
    basis.counting_function(lam)
}

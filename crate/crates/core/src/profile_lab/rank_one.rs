use std::f64::consts::FRAC_PI_2;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{EstimateKind, NormEstimate};
use crate::error::{Error, Result};
use crate::multipliers::{kernel_row_mass, sup_sum_norm, unit_bump};
use crate::spectrum::mode_lp_norm;
use crate::{EigenMode, Exponent, MultiplierProfile, Smoothness, SpectralBasis, Support};

/// `η(t)`: smooth, `η(0) = 1`, supported in `[−π/2, π/2]`.
pub fn eta(t: f64) -> f64 {
    unit_bump(t / FRAC_PI_2)
}

/// Exact `p → p` norm `‖φ_n‖_p ‖φ_n‖_{p′}` of `f ↦ ⟨φ_n, f⟩φ_n`.
pub fn rank_one_norm(mode: &EigenMode, p: f64) -> Result<NormEstimate> {
    let e = Exponent::new(p)?;
    let value = mode_lp_norm(mode, e, None)? * mode_lp_norm(mode, e.conjugate(), None)?;
    Ok(NormEstimate {
        op_tag: format!("P_{}", mode.n),
        p,
        q: p,
        kind: EstimateKind::ExactRankOne,
        value,
        method: "mode norms ||phi_n||_p ||phi_n||_p'".into(),
    })
}

fn check_index(basis: &SpectralBasis, n: usize) -> Result<()> {
    if n == 0 || n + 1 > basis.len() {
        return Err(Error::RangeViolation(format!(
            "mode index {n} needs modes 1..={} but the basis holds {}",
            n + 1,
            basis.len()
        )));
    }
    Ok(())
}

/// `F_n(λ) = η(√λ_{n+1} (λ − λ_n))`, which is 1 at `λ_n` and vanishes at
/// every other eigenvalue.
pub fn isolating_profile(basis: &SpectralBasis, n: usize) -> Result<MultiplierProfile> {
    check_index(basis, n)?;
    let lam = basis.mode(n)?.lambda;
    let s = basis.mode(n + 1)?.lambda.sqrt();
    let half = FRAC_PI_2 / s;
    Ok(MultiplierProfile::new(
        format!("F_{n}"),
        Support::Interval(lam - half, lam + half),
        Smoothness::ClosedForm,
        move |t| eta(s * (t - lam)),
    ))
}

/// One entry of [`necessary_condition_series`].
#[derive(Clone, Debug, Serialize)]
pub struct SeriesPoint {
    pub n: usize,
    pub lambda: f64,
    pub estimate: NormEstimate,
}

/// `‖F_n(L)‖_{p→p}` for `n` in `n_range`.
///
/// Since `F_n` isolates `λ_n`, `F_n(L)` is the rank-one projection onto
/// `φ_n`; its norm is the lower bound that a uniform bound on the Riesz
/// means must dominate up to the factor `λ_n^{3α/2}`.
pub fn necessary_condition_series(
    basis: &SpectralBasis,
    p: f64,
    n_range: RangeInclusive<usize>,
) -> Result<Vec<SeriesPoint>> {
    Exponent::new(p)?;
    check_index(basis, *n_range.start())?;
    check_index(basis, *n_range.end())?;
    n_range
        .into_par_iter()
        .map(|n| {
            let f = isolating_profile(basis, n)?;
            let lam = |m: usize| basis.modes()[m - 1].lambda;
            let isolated = f.eval(lam(n)) == 1.0
                && f.eval(lam(n + 1)) == 0.0
                && (n == 1 || f.eval(lam(n - 1)) == 0.0);
            if !isolated {
                return Err(Error::InvalidParameter(format!("F_{n} does not isolate lambda_{n}")));
            }
            let mut estimate = rank_one_norm(basis.mode(n)?, p)?;
            estimate.op_tag = format!("F_{n}(L)");
            estimate.kind = EstimateKind::Lower;
            Ok(SeriesPoint { n, lambda: lam(n), estimate })
        })
        .collect()
}

/// `sup_y ∫|K_{F(L/λ)}(x, y)|² dx` over `y_samples`, divided by
/// `λ^{1/2}‖F‖²_{λ^{3/2}, 2}`.
///
/// The row mass is `Σ F(λ_n/λ)² φ_n(y)²` by orthonormality.
pub fn kernel_row_l2_bound(
    basis: &SpectralBasis,
    f: &MultiplierProfile,
    lambda_scale: f64,
    y_samples: &[f64],
) -> Result<NormEstimate> {
    match f.support() {
        Support::Interval(lo, hi) if lo >= 0.375 && hi <= 1.125 => {}
        other => {
            return Err(Error::ProfileSupport(format!("{other:?} is not inside [3/8, 9/8]")));
        }
    }
    if let Some(y) = y_samples.iter().find(|y| y.abs() > lambda_scale / 4.0) {
        return Err(Error::RangeViolation(format!("|y| = {} exceeds lambda/4 = {}", y.abs(), lambda_scale / 4.0)));
    }
    let scaled = f.rescaled(lambda_scale);
    let sup = y_samples
        .par_iter()
        .map(|&y| kernel_row_mass(basis, &scaled, y))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let norm = sup_sum_norm(f, lambda_scale.powf(1.5), 2.0)?;
    let value = if sup == 0.0 { 0.0 } else { sup / (lambda_scale.sqrt() * norm * norm) };
    Ok(NormEstimate {
        op_tag: format!("F(L/{lambda_scale}) I_(lambda/4)"),
        p: 1.0,
        q: 2.0,
        kind: EstimateKind::EmpiricalUpper,
        value,
        method: format!("sup over {} rows of the squared row mass / (lambda^1/2 ||F||^2_(lambda^3/2,2))", y_samples.len()),
    })
}

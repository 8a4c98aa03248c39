use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{alpha_critical_reciprocal, EstimateKind, NormEstimate};
use crate::error::{Error, Result};
use crate::multipliers::spectral_weights;
use crate::spectrum::mode_lp_norm;
use crate::{Exponent, Grid, MultiplierProfile, RieszParams, SpectralBasis};

/// Dyadic radii used by default; needs a basis cutoff of at least 160.
pub const DEFAULT_R_LADDER: [f64; 5] = [8.0, 16.0, 32.0, 64.0, 128.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Convergent,
    Divergent,
    BoundaryUnknown,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Convergent => "convergent",
            Classification::Divergent => "divergent",
            Classification::BoundaryUnknown => "boundary-unknown",
        }
    }
}

/// Log-log slope thresholds separating growth from boundedness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanThresholds {
    pub divergent: f64,
    pub convergent: f64,
}

impl Default for ScanThresholds {
    fn default() -> Self {
        ScanThresholds { divergent: 0.02, convergent: 0.01 }
    }
}

impl ScanThresholds {
    pub fn classify(&self, slope: f64) -> Classification {
        if slope >= self.divergent {
            Classification::Divergent
        } else if slope <= self.convergent {
            Classification::Convergent
        } else {
            Classification::BoundaryUnknown
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub inv_p: f64,
    pub alpha: f64,
    pub classification: Classification,
    pub fitted_slope: f64,
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// For each `R`, the index `n` with `λ_n < R ≤ λ_{n+1}`.
pub fn snapped_ladder(basis: &SpectralBasis, r_ladder: &[f64]) -> Result<Vec<usize>> {
    if r_ladder.len() < 2 {
        return Err(Error::InvalidParameter("the R ladder needs at least two radii".into()));
    }
    let lambdas = basis.eigenvalues();
    r_ladder
        .iter()
        .map(|&r| {
            if r > basis.cutoff() {
                return Err(Error::BasisCutoffTooSmall { support_hi: r, cutoff: basis.cutoff() });
            }
            let above = lambdas.partition_point(|&l| l < r);
            if above == 0 || above >= lambdas.len() {
                return Err(Error::RangeViolation(format!("R = {r} is not bracketed by two eigenvalues of the basis")));
            }
            Ok(above)
        })
        .collect()
}

/// Classifies each `(1/p, α)` by the growth over `r_ladder` of the
/// rank-one lower bound `σ^α_{R′}(λ_n)‖φ_n‖_p‖φ_n‖_{p′}`, where `λ_n < R ≤ λ_{n+1}`
/// and `R′ = λ_{n+1}`.
///
/// Snapping `R` to the next eigenvalue makes `σ^α_{R′}(λ_n) = (gap/λ_{n+1})^α`,
/// the `λ^{−3α/2}` factor of the necessary-condition argument, instead of a
/// quantity that jumps with the position of `R` inside a gap.
pub fn profile_scan(
    basis: &SpectralBasis,
    inv_p_grid: &[f64],
    alpha_grid: &[f64],
    r_ladder: &[f64],
    thresholds: ScanThresholds,
) -> Result<Vec<ProfilePoint>> {
    let ns = snapped_ladder(basis, r_ladder)?;
    if let Some(a) = alpha_grid.iter().find(|a| !(**a >= 0.0 && a.is_finite())) {
        return Err(Error::InvalidParameter(format!("alpha must be >= 0, got {a}")));
    }
    let log_r: Vec<f64> = r_ladder.iter().map(|r| r.ln()).collect();
    let rows = inv_p_grid
        .par_iter()
        .map(|&inv_p| {
            let e = Exponent::from_reciprocal(inv_p)?;
            let logs = ns
                .iter()
                .map(|&n| {
                    let mode = &basis.modes()[n - 1];
                    let norm = mode_lp_norm(mode, e, None)? * mode_lp_norm(mode, e.conjugate(), None)?;
                    let sigma_log = (1.0 - mode.lambda / basis.modes()[n].lambda).ln();
                    Ok((norm.ln(), sigma_log))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(alpha_grid
                .iter()
                .map(|&alpha| {
                    let ys: Vec<f64> = logs.iter().map(|(norm, sigma)| norm + alpha * sigma).collect();
                    let slope = fit_slope(&log_r, &ys);
                    ProfilePoint { inv_p, alpha, classification: thresholds.classify(slope), fitted_slope: slope }
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// CSV `inv_p,alpha,slope,classification`.
pub fn scan_csv(points: &[ProfilePoint]) -> String {
    let mut out = String::from("inv_p,alpha,slope,classification\n");
    for p in points {
        out.push_str(&format!("{},{},{:.6e},{}\n", p.inv_p, p.alpha, p.fitted_slope, p.classification.as_str()));
    }
    out
}

/// Plot-ready comparison with the predicted regions: the critical curve
/// `α_cr(1/p)` next to each scanned point and its classification.
pub fn regions_csv(points: &[ProfilePoint]) -> String {
    let mut out = String::from("inv_p,alpha,alpha_critical,predicted,observed\n");
    for p in points {
        let crit = alpha_critical_reciprocal(p.inv_p);
        let predicted = if p.alpha > crit {
            "convergent"
        } else if p.alpha < crit {
            "divergent"
        } else {
            "boundary-unknown"
        };
        out.push_str(&format!("{},{},{:.6},{},{}\n", p.inv_p, p.alpha, crit, predicted, p.classification.as_str()));
    }
    out
}

/// `sup_y ∫|K(x, y)| dx` for `σ^α_R(L)` over `y_samples`: the `1 → 1`
/// norm restricted to those rows, as an empirical upper proxy.
pub fn row_sum_upper_proxy(
    basis: &SpectralBasis,
    alpha: f64,
    r: f64,
    grid: Grid,
    y_samples: &[f64],
) -> Result<NormEstimate> {
    let profile = MultiplierProfile::riesz(RieszParams::new(alpha, r)?);
    let weights = spectral_weights(basis, &profile)?;
    let table: Vec<Vec<f64>> = weights
        .par_iter()
        .map(|&(m, _)| grid.points().map(|x| basis.modes()[m].eval(x)).collect())
        .collect();
    let sup = y_samples
        .par_iter()
        .map(|&y| {
            let coeff: Vec<f64> = weights.iter().map(|&(m, w)| w * basis.modes()[m].eval(y)).collect();
            (0..grid.n_points())
                .map(|i| {
                    let k: f64 = coeff.iter().zip(&table).map(|(c, row)| c * row[i]).sum();
                    grid.weight(i) * k.abs()
                })
                .sum::<f64>()
        })
        .reduce(|| 0.0, f64::max);
    Ok(NormEstimate {
        op_tag: format!("sigma^{alpha}_{r}(L)"),
        p: 1.0,
        q: 1.0,
        kind: EstimateKind::EmpiricalUpper,
        value: sup,
        method: format!("max row L1 norm over {} rows on {} points", y_samples.len(), grid.n_points()),
    })
}

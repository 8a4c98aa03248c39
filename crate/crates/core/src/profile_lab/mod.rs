//! Norm estimates for multipliers of `L` and the empirical Bochner-Riesz
//! convergence map in the `(1/p, α)` plane.

mod projector;
mod rank_one;
mod scan;

pub use projector::{apply_projector, ProjectorSide, RestrictionProjector};
pub use rank_one::{
    eta, isolating_profile, kernel_row_l2_bound, necessary_condition_series, rank_one_norm, SeriesPoint,
};
pub use scan::{
    fit_slope, profile_scan, regions_csv, row_sum_upper_proxy, scan_csv, snapped_ladder, Classification, ProfilePoint,
    ScanThresholds, DEFAULT_R_LADDER,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a [`NormEstimate`] relates to the true operator norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    ExactRankOne,
    Lower,
    EmpiricalUpper,
}

/// A `p → q` norm estimate for a named operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub op_tag: String,
    pub p: f64,
    pub q: f64,
    pub kind: EstimateKind,
    pub value: f64,
    pub method: String,
}

/// `max{0, (2/3)|1/2 − 1/p| − 1/6}`; `p = ∞` is accepted.
pub fn alpha_critical(p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent { p });
    }
    Ok(alpha_critical_reciprocal(1.0 / p))
}

/// [`alpha_critical`] in the variable `1/p ∈ [0, 1]`.
pub fn alpha_critical_reciprocal(inv_p: f64) -> f64 {
    (2.0 / 3.0 * (0.5 - inv_p).abs() - 1.0 / 6.0).max(0.0)
}

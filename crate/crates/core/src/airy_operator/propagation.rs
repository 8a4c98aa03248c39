use serde::Serialize;

use super::airy_multiplier_kernel_row;
use crate::error::{Error, Result};
use crate::multipliers::{gh_split_with_bandwidth, multiplier_kernel_row};
use crate::spectrum::build_basis_up_to;
use crate::{Grid, GridFunction, MultiplierProfile};

/// Outcome of comparing `G(L/λ)δ_y` with `G(A/λ)δ_y`.
#[derive(Clone, Debug, Serialize)]
pub struct PropagationReport {
    pub lambda_scale: f64,
    pub y: f64,
    pub bandwidth: f64,
    /// `h/√λ`, the distance a band-limited multiplier can move `δ_y`.
    pub propagation_radius: f64,
    pub modes_used: usize,
    pub sup_kernel: f64,
    pub relative_sup_diff: f64,
    #[serde(skip)]
    pub kernel_l: GridFunction,
    #[serde(skip)]
    pub kernel_a: GridFunction,
}

/// Default mollifier bandwidth `λ^{3/2}/6` at scale `λ`.
pub fn default_bandwidth(lambda_scale: f64) -> f64 {
    lambda_scale.powf(1.5) / 6.0
}

/// Relative sup-norm difference of the two kernel rows at `y` with the
/// default bandwidth.
pub fn verify_finite_propagation(f: &MultiplierProfile, lambda_scale: f64, y: f64, grid: Grid) -> Result<f64> {
    Ok(finite_propagation_report(f, lambda_scale, y, grid, default_bandwidth(lambda_scale))?.relative_sup_diff)
}

/// Builds `G` from `F` with mollifier bandwidth `bandwidth`, then evaluates
/// `K_{G(L/λ)}(·, y)` from the discrete basis below `4λ` and `K_{G(A/λ)}(·, y)`
/// from the continuous kernel over `μ ∈ [−λ, 4λ]`.
pub fn finite_propagation_report(
    f: &MultiplierProfile,
    lambda_scale: f64,
    y: f64,
    grid: Grid,
    bandwidth: f64,
) -> Result<PropagationReport> {
    if !(lambda_scale > 0.0 && y >= lambda_scale / 4.0) {
        return Err(Error::PropagationPrecondition(format!(
            "need 0 < lambda/4 <= y, got lambda = {lambda_scale}, y = {y}"
        )));
    }
    let split = gh_split_with_bandwidth(f, lambda_scale, bandwidth)?;
    let g = split.g_part.rescaled(lambda_scale);
    let basis = build_basis_up_to(4.0 * lambda_scale)?;
    let kernel_l = multiplier_kernel_row(&basis, &g, y, grid)?;
    let kernel_a = airy_multiplier_kernel_row(&g, y, grid)?;
    let sup_kernel = kernel_a.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sup_diff = kernel_l
        .values()
        .iter()
        .zip(kernel_a.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let relative_sup_diff = if sup_kernel == 0.0 { sup_diff } else { sup_diff / sup_kernel };
    Ok(PropagationReport {
        lambda_scale,
        y,
        bandwidth,
        propagation_radius: bandwidth / lambda_scale.sqrt(),
        modes_used: basis.len(),
        sup_kernel,
        relative_sup_diff,
        kernel_l,
        kernel_a,
    })
}

//! Spectral multipliers `F(L)`, their kernels, the sup-sum norm, and the
//! band-limited `G + H` split.

mod apply;
mod gh;
mod profile;
mod sup_sum;

pub use apply::{apply_multiplier, kernel_row_mass, multiplier_kernel_row, multiplier_kernel_rows};
pub use gh::{gh_split, gh_split_with_bandwidth, mollifier_hat, GHSplit, LIFT_POINTS};
pub use profile::{unit_bump, MultiplierProfile, RieszParams, Smoothness, Support};
pub use sup_sum::{sup_sum_norm, sup_sum_norm_with_density, SAMPLES_PER_CELL};

pub(crate) use apply::spectral_weights;

/// Bochner-Riesz profile `(1 − λ/R)^α_+`.
pub fn riesz_profile(params: RieszParams) -> MultiplierProfile {
    MultiplierProfile::riesz(params)
}

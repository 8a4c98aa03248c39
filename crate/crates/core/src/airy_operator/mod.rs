//! The Airy operator `A = −d²/dx² + x` on the line.
//!
//! Its generalized eigenfunctions are `Ai(x − λ)`, so `F(A)` has kernel
//! `∫ F(μ) Ai(x − μ) Ai(y − μ) dμ` and the Airy transform diagonalizes it.

mod bounds;
mod kernel;
mod propagation;
mod transform;

pub use bounds::{envelope_a, envelope_b, kernel_width, verify_kernel_bound, KernelBoundReport, KernelRegime};
pub use kernel::{airy_kernel_value, airy_multiplier_kernel_row, plancherel_sides};
pub use propagation::{default_bandwidth, finite_propagation_report, verify_finite_propagation, PropagationReport};
pub use transform::{airy_inverse_transform, airy_transform, AiryTransformPlan, LEAKAGE_TOLERANCE};

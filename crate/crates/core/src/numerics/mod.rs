//! Grids, grid functions, quadrature and norm primitives.

mod exponent;
mod gauss_legendre;
mod grid;
mod quadrature;
mod search;

pub use exponent::Exponent;
pub use gauss_legendre::GaussLegendre;
pub use grid::{Grid, GridFunction};
pub(crate) use quadrature::default_gauss_legendre;
pub use search::golden_section_max;
pub use quadrature::{
    integrate, integrate_breaks, integrate_real, oscillation_panel_width, QuadratureKind,
    QuadratureRule,
};

/// Nodes per panel used by every composite Gauss-Legendre integration in the crate.
pub const DEFAULT_GL_NODES: usize = 16;

/// Default sample count for kernel rows and other grid functions.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Envelope level below which an exponential tail is cut off.
pub const TAIL_CUTOFF: f64 = 1e-16;

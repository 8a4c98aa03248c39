use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Every variant's message starts with a stable lowercase tag so that
/// callers (and the CLI's machine-readable error output) can match on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite integrand at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid exponent: p = {p} (need p >= 1 or infinity)")]
    InvalidExponent { p: f64 },

    #[error("incompatible grids")]
    IncompatibleGrids,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("argument out of range: x = {x} (|x| must not exceed {limit})")]
    ArgumentOutOfRange { x: f64, limit: f64 },

    #[error("decomposition domain: x = {x} (need x < -1)")]
    DecompositionDomain { x: f64 },

    #[error("zero refinement failed for {kind} zero #{index} after {iterations} iterations")]
    ZeroRefinementFailed {
        kind: &'static str,
        index: usize,
        iterations: usize,
    },

    #[error("basis too small: requested {requested}, basis cutoff is {cutoff}")]
    BasisTooSmall { requested: f64, cutoff: f64 },

    #[error("basis cutoff too small: profile support reaches {support_hi}, basis cutoff is {cutoff}")]
    BasisCutoffTooSmall { support_hi: f64, cutoff: f64 },

    #[error("requires compact support")]
    RequiresCompactSupport,

    #[error("profile support: {0}")]
    ProfileSupport(String),

    #[error("profile decay: {0}")]
    ProfileDecay(String),

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("propagation precondition: {0}")]
    PropagationPrecondition(String),

    #[error("regime: {0}")]
    Regime(String),

    #[error("range violation: {0}")]
    RangeViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short stable tag naming the failure class.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::NonFiniteIntegrand { .. } => "non-finite integrand",
            Error::InvalidExponent { .. } => "invalid exponent",
            Error::IncompatibleGrids => "incompatible grids",
            Error::InvalidGrid(_) => "invalid grid",
            Error::InvalidRule(_) => "invalid quadrature rule",
            Error::NonFiniteSample { .. } => "non-finite sample",
            Error::ArgumentOutOfRange { .. } => "argument out of range",
            Error::DecompositionDomain { .. } => "decomposition domain",
            Error::ZeroRefinementFailed { .. } => "zero refinement failed",
            Error::BasisTooSmall { .. } => "basis too small",
            Error::BasisCutoffTooSmall { .. } => "basis cutoff too small",
            Error::RequiresCompactSupport => "requires compact support",
            Error::ProfileSupport(_) => "profile support",
            Error::ProfileDecay(_) => "profile decay",
            Error::DomainTooSmall(_) => "domain too small",
            Error::PropagationPrecondition(_) => "propagation precondition",
            Error::Regime(_) => "regime",
            Error::RangeViolation(_) => "range violation",
            Error::InvalidParameter(_) => "invalid parameter",
            Error::Parse(_) => "parse error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Inputs shared by the Airy-operator tests and the acceptance run.

use anharmonic::airy_operator::plancherel_sides;
use anharmonic::{Grid, MultiplierProfile, Result};

fn gauss(x: f64, c: f64) -> f64 {
    (-(x - c) * (x - c) / 2.0).exp()
}

/// Five smooth test inputs concentrated in `|x| ≲ 5`.
pub fn canonical_functions() -> Vec<(&'static str, fn(f64) -> f64)> {
    vec![
        ("gaussian", |x| gauss(x, 0.0)),
        ("shifted gaussian", |x| gauss(x, 3.0)),
        ("two gaussians", |x| gauss(x, 2.0) + gauss(x, -2.0)),
        ("modulated gaussian", |x| (2.0 * x).cos() * gauss(x, 0.0)),
        ("odd gaussian", |x| x * gauss(x, 0.0)),
    ]
}

/// `(x, F)` pairs for the row identity.
pub fn plancherel_pairs() -> Vec<(f64, MultiplierProfile)> {
    vec![
        (3.7, MultiplierProfile::bump(10.0, 20.0)),
        (12.0, MultiplierProfile::bump(10.0, 20.0)),
        (-5.0, MultiplierProfile::bump(0.0, 8.0)),
        (7.0, MultiplierProfile::bump(5.0, 25.0)),
        (-2.0, MultiplierProfile::bump(-5.0, 5.0)),
    ]
}

/// Relative gap between the two sides, integrating the row over
/// `y ∈ [x − 200, hi + 20]` at spacing `0.02`.
///
/// A bump's Fourier transform decays only like `exp(−c√ω)`, so the row
/// tails off slowly as `y → −∞` and needs the long window.
pub fn plancherel_gap(x: f64, f: &MultiplierProfile) -> Result<f64> {
    let (_, hi) = f.support().bounds().unwrap();
    let (lo, top) = (x - 200.0, hi + 20.0);
    let grid = Grid::new(lo, top, ((top - lo) / 0.02).round() as usize + 1)?;
    let (lhs, rhs) = plancherel_sides(f, x, grid)?;
    Ok((lhs - rhs).abs() / rhs)
}

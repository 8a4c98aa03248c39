use num_complex::Complex;
use rayon::prelude::*;

use super::{MultiplierProfile, Support};
use crate::error::{Error, Result};
use crate::{Grid, GridFunction, SpectralBasis};

/// `(index, F(λ_n))` for every mode with a non-zero weight, after checking
/// that the basis covers the support of `F`.
pub(crate) fn spectral_weights(basis: &SpectralBasis, f: &MultiplierProfile) -> Result<Vec<(usize, f64)>> {
    match f.support() {
        Support::Unbounded => {
            return Err(Error::BasisCutoffTooSmall { support_hi: f64::INFINITY, cutoff: basis.cutoff() });
        }
        Support::Interval(_, hi) if hi > basis.cutoff() => {
            return Err(Error::BasisCutoffTooSmall { support_hi: hi, cutoff: basis.cutoff() });
        }
        _ => {}
    }
    Ok(basis
        .modes()
        .iter()
        .enumerate()
        .map(|(i, m)| (i, f.eval(m.lambda)))
        .filter(|&(_, w)| w != 0.0)
        .collect())
}

/// Evaluates `Σ c_n φ_n(x)` on `grid`, summing modes in index order at each node.
fn synthesize(basis: &SpectralBasis, coeffs: &[(usize, Complex<f64>)], grid: Grid) -> Result<GridFunction> {
    let modes = basis.modes();
    let values: Vec<Complex<f64>> = (0..grid.n_points())
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            coeffs
                .iter()
                .fold(Complex::new(0.0, 0.0), |acc, &(n, c)| acc + c * modes[n].eval(x))
        })
        .collect();
    GridFunction::new(grid, values)
}

/// `F(L)f = Σ F(λ_n)⟨f, φ_n⟩φ_n` sampled on `f`'s grid.
///
/// Coefficients use the trapezoid rule on that grid, so `f` should be
/// resolved and the grid wide enough to hold the modes involved.
pub fn apply_multiplier(basis: &SpectralBasis, f_profile: &MultiplierProfile, f: &GridFunction) -> Result<GridFunction> {
    let weights = spectral_weights(basis, f_profile)?;
    let grid = *f.grid();
    let coeffs = weights
        .par_iter()
        .map(|&(n, w)| {
            let phi = basis.modes()[n].sample(grid)?;
            Ok((n, f.inner_product(&phi)? * w))
        })
        .collect::<Result<Vec<_>>>()?;
    synthesize(basis, &coeffs, grid)
}

/// `K(x, y) = Σ F(λ_n)φ_n(x)φ_n(y)` as a function of `x` on `grid`.
pub fn multiplier_kernel_row(basis: &SpectralBasis, f_profile: &MultiplierProfile, y: f64, grid: Grid) -> Result<GridFunction> {
    let weights = spectral_weights(basis, f_profile)?;
    let coeffs: Vec<_> = weights
        .iter()
        .map(|&(n, w)| (n, Complex::new(w * basis.modes()[n].eval(y), 0.0)))
        .collect();
    synthesize(basis, &coeffs, grid)
}

/// `Σ F(λ_n)² φ_n(y)²`, the squared `L²` norm of the kernel row at `y`.
pub fn kernel_row_mass(basis: &SpectralBasis, f_profile: &MultiplierProfile, y: f64) -> Result<f64> {
    let weights = spectral_weights(basis, f_profile)?;
    Ok(weights
        .iter()
        .map(|&(n, w)| {
            let v = w * basis.modes()[n].eval(y);
            v * v
        })
        .sum())
}

/// Kernel rows for several `y`, computed in parallel.
pub fn multiplier_kernel_rows(
    basis: &SpectralBasis,
    f_profile: &MultiplierProfile,
    ys: &[f64],
    grid: Grid,
) -> Result<Vec<GridFunction>> {
    ys.par_iter().map(|&y| multiplier_kernel_row(basis, f_profile, y, grid)).collect()
}

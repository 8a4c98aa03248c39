use super::{EigenMode, SpectralBasis};
use crate::airy::{ai_pair, ai_prime_zeros, ai_zeros, ZeroKind};
use crate::error::Result;
use crate::numerics::{default_gauss_legendre, integrate_breaks, oscillation_panel_width, Exponent, Grid, GridFunction, TAIL_CUTOFF};
use crate::scalar::Scalar;

/// Point beyond which `e^{−(2/3) p t^{3/2}}` is below [`TAIL_CUTOFF`].
fn tail_cut(p: f64) -> f64 {
    (1.5 * -TAIL_CUTOFF.ln() / p).powf(2.0 / 3.0)
}

/// Breakpoints on `[−λ, cut]`: the endpoints, the zeros of `Ai` inside, and 0.
fn zero_aligned_breaks<T: Scalar>(lambda: T, cut: f64) -> Result<Vec<T>> {
    let lam = lambda.as_f64();
    let mut count = 0;
    while ZeroKind::Ai.initial_guess(count + 1) > -lam - 1.0 {
        count += 1;
    }
    let mut breaks = vec![-lambda];
    if count > 0 {
        let zeros = ai_zeros::<T>(count)?;
        breaks.extend(zeros.zeros.iter().rev().copied().filter(|&z| z > -lambda));
    }
    if lambda > T::zero() {
        breaks.push(T::zero());
    }
    breaks.push(T::lit(cut));
    Ok(breaks)
}

/// `∫_{−λ}^{∞} |Ai|^p` with panels aligned to the zeros of `Ai`.
fn airy_power_integral<T: Scalar>(lambda: T, p: f64) -> Result<T> {
    let breaks = zero_aligned_breaks(lambda, tail_cut(p))?;
    let width = T::lit(oscillation_panel_width(lambda.as_f64()));
    let pt = T::lit(p);
    integrate_breaks(|t| ai_pair(t).0.abs().powf(pt), &breaks, width)
}

/// `A_n` recomputed from `2∫_{−λ}^{∞} Ai² = A_n^{−2}` by quadrature.
pub fn quadrature_norm_const<T: Scalar>(mode: &EigenMode<T>) -> Result<T> {
    let mass = airy_power_integral(mode.lambda, 2.0)?;
    Ok((T::lit(2.0) * mass).sqrt().recip())
}

/// `‖φ_n‖_p` over the real line.
///
/// Without a grid hint the integral is taken by Gauss-Legendre panels aligned
/// to the zeros of `Ai(|u| − λ_n)`, truncated where the decaying tail drops below
/// `1e−16`; `p = ∞` is exact (the largest peak of `|Ai|` on `[−λ, ∞)` sits at
/// the first zero of `Ai'`). With a hint the norm is the trapezoid rule on that grid.
pub fn mode_lp_norm<T: Scalar>(mode: &EigenMode<T>, p: Exponent, grid_hint: Option<&Grid<T>>) -> Result<T> {
    let p = p.validate()?;
    if let Some(grid) = grid_hint {
        return mode.sample(*grid)?.lp_norm(p);
    }
    match p {
        Exponent::Infinity => {
            let first = ai_prime_zeros::<T>(1)?.zeros[0];
            let peak = if -mode.lambda <= first { ai_pair(first).0 } else { ai_pair(-mode.lambda).0 };
            Ok(mode.norm_const * peak.abs())
        }
        Exponent::Finite(p) => {
            let half = airy_power_integral(mode.lambda, p)?;
            Ok(mode.norm_const * (T::lit(2.0) * half).powf(T::lit(1.0 / p)))
        }
    }
}

/// `⟨φ_m, φ_n⟩` for the first `count` modes, by Gauss-Legendre on `[0, U]`
/// folded with the parities.
pub fn gram_matrix<T: Scalar>(basis: &SpectralBasis<T>, count: usize) -> Result<Vec<Vec<T>>> {
    let modes = &basis.modes()[..count.min(basis.len())];
    let Some(top) = modes.last() else {
        return Ok(Vec::new());
    };
    let upper = top.lambda.as_f64() + tail_cut(2.0);
    let width = oscillation_panel_width(top.lambda.as_f64());
    let panels = (upper / width).ceil() as usize;
    let h = upper / panels as f64;
    let gl = default_gauss_legendre();
    let mut nodes = Vec::with_capacity(panels * gl.len());
    for k in 0..panels {
        for (x, w) in gl.mapped(k as f64 * h, (k + 1) as f64 * h) {
            nodes.push((T::lit(x), T::lit(w)));
        }
    }
    let samples: Vec<Vec<T>> = modes.iter().map(|m| nodes.iter().map(|&(x, _)| m.eval(x)).collect()).collect();
    let mut gram = vec![vec![T::zero(); modes.len()]; modes.len()];
    for i in 0..modes.len() {
        for j in 0..=i {
            if modes[i].parity != modes[j].parity {
                continue;
            }
            let half: T = nodes.iter().enumerate().map(|(k, &(_, w))| w * samples[i][k] * samples[j][k]).sum();
            gram[i][j] = T::lit(2.0) * half;
            gram[j][i] = gram[i][j];
        }
    }
    Ok(gram)
}

/// Trapezoid Gram matrix on an explicit grid.
pub fn gram_matrix_on_grid<T: Scalar>(basis: &SpectralBasis<T>, count: usize, grid: Grid<T>) -> Result<Vec<Vec<T>>> {
    let samples: Vec<GridFunction<T>> = basis.modes()[..count.min(basis.len())]
        .iter()
        .map(|m| m.sample(grid))
        .collect::<Result<_>>()?;
    samples
        .iter()
        .map(|a| samples.iter().map(|b| a.inner_product(b).map(|z| z.re)).collect())
        .collect()
}

use num_complex::Complex;
use rayon::prelude::*;

use crate::airy::ai_value;
use crate::error::{Error, Result};
use crate::numerics::{default_gauss_legendre, integrate_breaks, oscillation_panel_width};
use crate::{Grid, GridFunction, MultiplierProfile, Support};

/// Gauss-Legendre nodes `μ_k` and weights `w_k F(μ_k)` covering the support
/// of `F`, with panels fine enough for Airy rows starting at `x_min`.
pub(crate) struct SpectralNodes {
    pub mu: Vec<f64>,
    pub weight: Vec<f64>,
}

fn support_of(f: &MultiplierProfile) -> Result<(f64, f64)> {
    match f.support() {
        Support::Interval(lo, hi) => Ok((lo, hi)),
        Support::Unbounded => Err(Error::ProfileDecay(format!(
            "profile '{}' has unbounded support; the Airy kernel integral needs a compact spectral window",
            f.label()
        ))),
    }
}

impl SpectralNodes {
    pub(crate) fn new(f: &MultiplierProfile, x_min: f64) -> Result<Self> {
        let (lo, hi) = support_of(f)?;
        let mut mu = Vec::new();
        let mut weight = Vec::new();
        if !(lo < hi) {
            return Ok(SpectralNodes { mu, weight });
        }
        let width = oscillation_panel_width(hi - x_min);
        let gl = default_gauss_legendre();
        let panels = ((hi - lo) / width).ceil().max(1.0) as usize;
        let step = (hi - lo) / panels as f64;
        for k in 0..panels {
            let mid = lo + step * (k as f64 + 0.5);
            for (&t, &w) in gl.nodes().iter().zip(gl.weights()) {
                let m = mid + 0.5 * step * t;
                let v = f.eval(m);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand { x: m });
                }
                if v != 0.0 {
                    mu.push(m);
                    weight.push(0.5 * step * w * v);
                }
            }
        }
        Ok(SpectralNodes { mu, weight })
    }
}

/// `K(x, y) = ∫ F(μ) Ai(x − μ) Ai(y − μ) dμ` sampled in `x` on `grid`.
///
/// Only compactly supported profiles are accepted.
pub fn airy_multiplier_kernel_row(f: &MultiplierProfile, y: f64, grid: Grid) -> Result<GridFunction> {
    let nodes = SpectralNodes::new(f, grid.lo().min(y))?;
    let coeff: Vec<f64> = nodes.mu.iter().zip(&nodes.weight).map(|(&m, &w)| w * ai_value(y - m)).collect();
    let values: Vec<Complex<f64>> = (0..grid.n_points())
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            let s: f64 = nodes.mu.iter().zip(&coeff).map(|(&m, &c)| c * ai_value(x - m)).sum();
            Complex::new(s, 0.0)
        })
        .collect();
    GridFunction::new(grid, values)
}

/// A single kernel value `K(x, y)`.
pub fn airy_kernel_value(f: &MultiplierProfile, x: f64, y: f64) -> Result<f64> {
    let nodes = SpectralNodes::new(f, x.min(y))?;
    Ok(nodes
        .mu
        .iter()
        .zip(&nodes.weight)
        .map(|(&m, &w)| w * ai_value(x - m) * ai_value(y - m))
        .sum())
}

/// Both sides of the row identity `∫|K(x,y)|² dy = ∫ F(μ)² Ai(x − μ)² dμ`.
///
/// The left side is a trapezoid sum of the kernel row over `y_grid`, which
/// must hold essentially all of the row's mass.
pub fn plancherel_sides(f: &MultiplierProfile, x: f64, y_grid: Grid) -> Result<(f64, f64)> {
    let row = airy_multiplier_kernel_row(f, x, y_grid)?;
    let lhs = row.lp_norm(crate::Exponent::Finite(2.0))?.powi(2);
    let (lo, hi) = support_of(f)?;
    let rhs = if lo < hi {
        integrate_breaks(
            |m: f64| {
                let v = f.eval(m) * ai_value(x - m);
                v * v
            },
            &[lo, hi],
            0.5 * oscillation_panel_width(hi - x),
        )?
    } else {
        0.0
    };
    Ok((lhs, rhs))
}

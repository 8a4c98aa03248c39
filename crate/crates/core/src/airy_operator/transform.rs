use num_complex::Complex;
use rayon::prelude::*;

use crate::airy::ai_value;
use crate::error::{Error, Result};
use crate::numerics::QuadratureKind;
use crate::{Grid, GridFunction, QuadratureRule};

/// Relative `L²` mass allowed in the outer 2% of a grid before a window is
/// declared too small.
pub const LEAKAGE_TOLERANCE: f64 = 1e-10;

/// Physical and spectral windows for the Airy transform `Tf(λ) = ∫ f(x)Ai(x − λ)dx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryTransformPlan {
    pub grid: Grid,
    pub spectral_grid: Grid,
    pub quadrature: QuadratureRule,
}

impl AiryTransformPlan {
    /// Both integrals are trapezoid sums over the sample grids, so the rule
    /// must be a trapezoid rule matching `grid`.
    pub fn new(grid: Grid, spectral_grid: Grid, quadrature: QuadratureRule) -> Result<Self> {
        if quadrature.kind() != QuadratureKind::Trapezoid {
            return Err(Error::InvalidRule("the sampled transform uses the trapezoid rule".into()));
        }
        if quadrature.panel_count() * (quadrature.nodes_per_panel() - 1) != grid.n_points() - 1 {
            return Err(Error::InvalidRule("trapezoid intervals must match the physical grid".into()));
        }
        Ok(AiryTransformPlan { grid, spectral_grid, quadrature })
    }

    /// Trapezoid plan on the given windows.
    pub fn trapezoid(grid: Grid, spectral_grid: Grid) -> Result<Self> {
        Self::new(grid, spectral_grid, QuadratureRule::trapezoid(grid.n_points() - 1)?)
    }

    /// Physical window `[−10, 10]` and spectral window `[−20, 80]`, both with step `0.01`.
    ///
    /// The spectral window covers inputs concentrated in `|x| ≲ 5` whose
    /// frequency content is below about `√80`.
    pub fn standard() -> Self {
        let grid = Grid::new(-10.0, 10.0, 2001).expect("valid grid");
        let spectral = Grid::new(-20.0, 80.0, 10_001).expect("valid grid");
        Self::trapezoid(grid, spectral).expect("valid plan")
    }
}

/// Fraction of `L²` mass carried by the outer 2% of samples at either end.
fn edge_mass(g: &GridFunction) -> f64 {
    let n = g.values().len();
    let m = (n / 50).max(1);
    let total: f64 = g.values().iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let edge: f64 = g.values()[..m].iter().chain(&g.values()[n - m..]).map(|v| v.norm_sqr()).sum();
    (edge / total).sqrt()
}

fn check_window(g: &GridFunction, what: &str) -> Result<()> {
    let leak = edge_mass(g);
    if leak > LEAKAGE_TOLERANCE {
        return Err(Error::DomainTooSmall(format!("{what} carries relative mass {leak:.2e} at the window edges")));
    }
    Ok(())
}

/// `out(t_j) = Σ_i w_i·v_i·Ai(s_i − t_j)` over source grid `s` and target grid `t`.
///
/// When the two steps coincide the Airy factor depends only on `i − j` and
/// is tabulated once.
fn airy_convolve(src: &GridFunction, target: Grid, sign: f64) -> Result<GridFunction> {
    let sg = *src.grid();
    let weighted: Vec<Complex<f64>> = src.values().iter().enumerate().map(|(i, v)| v * sg.weight(i)).collect();
    let hs = sg.step();
    let ht = target.step();
    // argument = sign·(s_i − t_j)
    let values: Vec<Complex<f64>> = if (hs - ht).abs() <= 1e-12 * hs {
        let n_s = sg.n_points() as i64;
        let n_t = target.n_points() as i64;
        let base = sg.lo() - target.lo();
        let offset = n_t - 1;
        let table: Vec<f64> = (-(n_t - 1)..n_s).map(|k| ai_value(sign * (base + k as f64 * hs))).collect();
        (0..n_t as usize)
            .into_par_iter()
            .map(|j| {
                weighted
                    .iter()
                    .enumerate()
                    .fold(Complex::new(0.0, 0.0), |acc, (i, w)| acc + w * table[(i as i64 - j as i64 + offset) as usize])
            })
            .collect()
    } else {
        (0..target.n_points())
            .into_par_iter()
            .map(|j| {
                let t = target.point(j);
                weighted
                    .iter()
                    .enumerate()
                    .fold(Complex::new(0.0, 0.0), |acc, (i, w)| acc + w * ai_value(sign * (sg.point(i) - t)))
            })
            .collect()
    };
    GridFunction::new(target, values)
}

/// `Tf(λ) = ∫ f(x) Ai(x − λ) dx` on the plan's spectral grid.
pub fn airy_transform(plan: &AiryTransformPlan, f: &GridFunction) -> Result<GridFunction> {
    if !f.grid().compatible(&plan.grid) {
        return Err(Error::IncompatibleGrids);
    }
    check_window(f, "input")?;
    let out = airy_convolve(f, plan.spectral_grid, 1.0)?;
    check_window(&out, "transform")?;
    Ok(out)
}

/// `T⁻¹g(x) = ∫ g(λ) Ai(x − λ) dλ` on the plan's physical grid.
pub fn airy_inverse_transform(plan: &AiryTransformPlan, g: &GridFunction) -> Result<GridFunction> {
    if !g.grid().compatible(&plan.spectral_grid) {
        return Err(Error::IncompatibleGrids);
    }
    check_window(g, "spectral input")?;
    // Ai(x − λ) = Ai(−(λ − x)).
    let out = airy_convolve(g, plan.grid, -1.0)?;
    check_window(&out, "inverse transform")?;
    Ok(out)
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::SpectralNodes;
use crate::airy::ai_value;
use crate::error::{Error, Result};
use crate::numerics::golden_section_max;
use crate::{Grid, MultiplierProfile, Support};

/// Which envelope bounds `K_{w(A)}(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelRegime {
    /// `a ≥ min(1, |y|^{−1/2})`: width `d` around the diagonal.
    A,
    /// `a ≤ min(1, |y|^{−1/2})`: spread over `|x| ≲ a^{−2}`.
    B,
}

impl KernelRegime {
    pub fn select(a: f64, y: f64) -> Self {
        if a >= threshold(y) {
            KernelRegime::A
        } else {
            KernelRegime::B
        }
    }
}

fn threshold(y: f64) -> f64 {
    if y.abs() <= 1.0 {
        1.0
    } else {
        y.abs().powf(-0.5)
    }
}

/// Sampled peaks below this fraction of the largest one are not refined.
const POLISH_FRACTION: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelBoundReport {
    pub a: f64,
    pub y: f64,
    pub d: f64,
    pub l: u32,
    #[serde(rename = "fitted_C")]
    pub fitted_c: f64,
    pub max_violation_ratio: f64,
}

impl KernelBoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Diagonal width `max(a^{−1/2}, |y|^{1/2}/a)`.
pub fn kernel_width(a: f64, y: f64) -> f64 {
    a.powf(-0.5).max(y.abs().sqrt() / a)
}

/// `d^{−1}(1 + |x−y|/d)^{−l}(1 + |y|/(1+|x|))^{1/4}`.
pub fn envelope_a(a: f64, x: f64, y: f64, l: u32) -> f64 {
    let d = kernel_width(a, y);
    (1.0 + (x - y).abs() / d).powi(-(l as i32)) / d * (1.0 + y.abs() / (1.0 + x.abs())).powf(0.25)
}

/// `a(1 + a²|x|)^{−l}(1 + |y|)^{−1/4}(1 + |x|)^{−1/4}`.
pub fn envelope_b(a: f64, x: f64, y: f64, l: u32) -> f64 {
    a * (1.0 + a * a * x.abs()).powi(-(l as i32)) * ((1.0 + y.abs()) * (1.0 + x.abs())).powf(-0.25)
}

/// Fits the smallest `C` with `|K_{w(A)}(x, y)| ≤ C·envelope(x)` on the
/// points of `grid`, then reports the worst ratio `|K|/(C·envelope)` at the
/// midpoints between them.
///
/// `a` is the half-width of the support of `w`. The regime follows from
/// `a` and `y`; passing one explicitly that disagrees is an error.
pub fn verify_kernel_bound(
    w: &MultiplierProfile,
    y: f64,
    l: u32,
    grid: Grid,
    regime: Option<KernelRegime>,
) -> Result<KernelBoundReport> {
    let a = match w.support() {
        Support::Interval(lo, hi) => lo.abs().max(hi.abs()),
        Support::Unbounded => return Err(Error::RequiresCompactSupport),
    };
    if !(a > 0.0) {
        return Err(Error::InvalidParameter("w must be supported in [-a, a] with a > 0".into()));
    }
    let selected = KernelRegime::select(a, y);
    if let Some(r) = regime {
        if r != selected {
            return Err(Error::Regime(format!(
                "a = {a}, y = {y} puts the kernel in regime {selected:?}, not {r:?} (threshold min(1, |y|^-1/2) = {})",
                threshold(y)
            )));
        }
    }
    let envelope = |x: f64| match selected {
        KernelRegime::A => envelope_a(a, x, y, l),
        KernelRegime::B => envelope_b(a, x, y, l),
    };
    let nodes = SpectralNodes::new(w, grid.lo().min(y))?;
    let coeff: Vec<f64> = nodes.mu.iter().zip(&nodes.weight).map(|(&m, &c)| c * ai_value(y - m)).collect();
    let kernel = |x: f64| -> f64 { nodes.mu.iter().zip(&coeff).map(|(&m, &c)| c * ai_value(x - m)).sum() };
    let ratio = |x: f64| kernel(x).abs() / envelope(x);

    let samples: Vec<f64> = (0..grid.n_points()).into_par_iter().map(|i| ratio(grid.point(i))).collect();
    let grid_max = samples.iter().copied().fold(0.0, f64::max);
    // Sampled peaks can sit below the true local maxima; refine every peak
    // that could matter before fixing C.
    let step = grid.step();
    let fitted_c = (0..samples.len())
        .into_par_iter()
        .filter(|&i| {
            samples[i] >= POLISH_FRACTION * grid_max
                && (i == 0 || samples[i] >= samples[i - 1])
                && (i + 1 == samples.len() || samples[i] >= samples[i + 1])
        })
        .map(|i| {
            let x = grid.point(i);
            let lo = (x - step).max(grid.lo());
            let hi = (x + step).min(grid.hi());
            samples[i].max(golden_section_max(ratio, lo, hi))
        })
        .reduce(|| grid_max, f64::max);
    let worst = (0..grid.n_points() - 1)
        .into_par_iter()
        .map(|i| ratio(0.5 * (grid.point(i) + grid.point(i + 1))))
        .reduce(|| 0.0, f64::max);
    let max_violation_ratio = if fitted_c == 0.0 { 0.0 } else { worst / fitted_c };
    let d = match selected {
        KernelRegime::A => kernel_width(a, y),
        KernelRegime::B => a.powi(-2),
    };
    Ok(KernelBoundReport { a, y, d, l, fitted_c, max_violation_ratio })
}

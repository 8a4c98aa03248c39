use super::{MultiplierProfile, Support};
use crate::error::{Error, Result};
use crate::numerics::golden_section_max;

/// Samples per cell used by [`sup_sum_norm`].
pub const SAMPLES_PER_CELL: usize = 64;

/// `((1/M) Σ_l sup_{θ∈[(l−1)/M, l/M)} |F(θ)|^q)^{1/q}`.
pub fn sup_sum_norm(f: &MultiplierProfile, m: f64, q: f64) -> Result<f64> {
    sup_sum_norm_with_density(f, m, q, SAMPLES_PER_CELL)
}

/// [`sup_sum_norm`] with an explicit sampling density.
///
/// Each cell is sampled at `density` equispaced points starting at its left
/// end, plus a point just inside its right end; the best sample is then
/// polished by golden-section search on its neighbourhood.
pub fn sup_sum_norm_with_density(f: &MultiplierProfile, m: f64, q: f64, density: usize) -> Result<f64> {
    if !(m > 1.0) {
        return Err(Error::InvalidParameter(format!("M must exceed 1, got {m}")));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidExponent { p: q });
    }
    let (lo, hi) = match f.support() {
        Support::Interval(lo, hi) => (lo, hi),
        Support::Unbounded => return Err(Error::RequiresCompactSupport),
    };
    // Cells [(l−1)/M, l/M) meeting [lo, hi].
    let first = (lo * m).floor() as i64 + 1;
    let last = (hi * m).floor() as i64 + 1;
    let step = 1.0 / (m * density as f64);
    let mut total = 0.0;
    for l in first..=last {
        let a = (l - 1) as f64 / m;
        let b = l as f64 / m;
        let mut best = (a, f.eval(a).abs());
        for j in 1..density {
            let t = a + j as f64 * step;
            let v = f.eval(t).abs();
            if v > best.1 {
                best = (t, v);
            }
        }
        let right = b - 1e-9 / m;
        let v = f.eval(right).abs();
        if v > best.1 {
            best = (right, v);
        }
        let sup = polish(f, best, a, right, step);
        total += sup.powf(q);
    }
    Ok((total / m).powf(1.0 / q))
}

/// Golden-section search for a larger `|F|` within one sample step of `best`.
fn polish(f: &MultiplierProfile, best: (f64, f64), a: f64, b: f64, step: f64) -> f64 {
    let (t0, v0) = best;
    if v0 == 0.0 {
        return 0.0;
    }
    v0.max(golden_section_max(|t| f.eval(t).abs(), (t0 - step).max(a), (t0 + step).min(b)))
}

use std::sync::OnceLock;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{GaussLegendre, DEFAULT_GL_NODES};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    GaussLegendre,
    Trapezoid,
}

/// A composite rule: `panel_count` equal panels, `nodes_per_panel` nodes each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    panel_count: usize,
    nodes_per_panel: usize,
}

impl QuadratureRule {
    pub fn new(kind: QuadratureKind, panel_count: usize, nodes_per_panel: usize) -> Result<Self> {
        if panel_count == 0 {
            return Err(Error::InvalidRule("panel_count must be at least 1".into()));
        }
        match kind {
            QuadratureKind::GaussLegendre if nodes_per_panel < 2 => Err(Error::InvalidRule(
                "Gauss-Legendre panels need at least 2 nodes".into(),
            )),
            QuadratureKind::Trapezoid if nodes_per_panel < 2 => Err(Error::InvalidRule(
                "trapezoid panels need at least 2 nodes".into(),
            )),
            _ => Ok(QuadratureRule { kind, panel_count, nodes_per_panel }),
        }
    }

    /// Composite Gauss-Legendre with the default node count.
    pub fn gauss_legendre(panel_count: usize) -> Result<Self> {
        Self::new(QuadratureKind::GaussLegendre, panel_count, DEFAULT_GL_NODES)
    }

    /// Trapezoid rule with `intervals` equal sub-intervals.
    pub fn trapezoid(intervals: usize) -> Result<Self> {
        Self::new(QuadratureKind::Trapezoid, intervals, 2)
    }

    /// Gauss-Legendre panels no wider than `max_width` on `[lo, hi]`.
    pub fn gauss_legendre_for_width(lo: f64, hi: f64, max_width: f64) -> Result<Self> {
        let panels = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        Self::gauss_legendre(panels)
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn panel_count(&self) -> usize {
        self.panel_count
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    /// Same rule with twice as many panels.
    pub fn refined(&self) -> Self {
        QuadratureRule { panel_count: 2 * self.panel_count, ..*self }
    }
}

pub(crate) fn default_gauss_legendre() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(DEFAULT_GL_NODES))
}

fn checked<T: Scalar>(x: T, v: Complex<T>) -> Result<Complex<T>> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x: x.as_f64() })
    }
}

/// Approximates `∫_lo^hi f` with the given composite rule.
pub fn integrate<T, F>(f: F, lo: T, hi: T, rule: QuadratureRule) -> Result<Complex<T>>
where
    T: Scalar,
    F: Fn(T) -> Complex<T>,
{
    if !(lo < hi) {
        return Err(Error::InvalidRule(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    let panels = rule.panel_count;
    let width = (hi - lo) / T::from_count(panels);
    let mut acc = Complex::new(T::zero(), T::zero());
    match rule.kind {
        QuadratureKind::GaussLegendre => {
            let owned;
            let gl = if rule.nodes_per_panel == DEFAULT_GL_NODES {
                default_gauss_legendre()
            } else {
                owned = GaussLegendre::new(rule.nodes_per_panel);
                &owned
            };
            let half = width / T::lit(2.0);
            for k in 0..panels {
                let mid = lo + width * (T::from_count(k) + T::lit(0.5));
                let mut panel = Complex::new(T::zero(), T::zero());
                for (&t, &w) in gl.nodes().iter().zip(gl.weights()) {
                    let x = mid + half * T::lit(t);
                    panel = panel + checked(x, f(x))? * T::lit(w);
                }
                acc = acc + panel * half;
            }
        }
        QuadratureKind::Trapezoid => {
            let intervals = panels * (rule.nodes_per_panel - 1);
            let h = (hi - lo) / T::from_count(intervals);
            for i in 0..=intervals {
                let x = if i == intervals { hi } else { lo + h * T::from_count(i) };
                let v = checked(x, f(x))?;
                let w = if i == 0 || i == intervals { h / T::lit(2.0) } else { h };
                acc = acc + v * w;
            }
        }
    }
    Ok(acc)
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<T, F>(f: F, lo: T, hi: T, rule: QuadratureRule) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    integrate(|x| Complex::new(f(x), T::zero()), lo, hi, rule).map(|z| z.re)
}

/// Composite Gauss-Legendre over consecutive `breaks`, splitting each
/// interval into panels no wider than `max_width`.
///
/// Breakpoints let callers align panels with kinks and zeros of the integrand.
pub fn integrate_breaks<T, F>(f: F, breaks: &[T], max_width: T) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let gl = default_gauss_legendre();
    let mut acc = T::zero();
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if !(a < b) {
            continue;
        }
        let panels = ((b - a) / max_width).ceil().to_usize().unwrap_or(1).max(1);
        let width = (b - a) / T::from_count(panels);
        let half = width / T::lit(2.0);
        for k in 0..panels {
            let mid = a + width * (T::from_count(k) + T::lit(0.5));
            let mut panel = T::zero();
            for (&t, &w) in gl.nodes().iter().zip(gl.weights()) {
                let x = mid + half * T::lit(t);
                let v = f(x);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand { x: x.as_f64() });
                }
                panel = panel + v * T::lit(w);
            }
            acc = acc + panel * half;
        }
    }
    Ok(acc)
}

/// Largest panel width allowed near spectral energy `energy`: a quarter of
/// the local wavelength `2π/√energy`.
pub fn oscillation_panel_width(energy: f64) -> f64 {
    0.5 * std::f64::consts::PI / energy.max(1.0).sqrt()
}

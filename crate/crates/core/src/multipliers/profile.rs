use std::fmt;
use std::io::BufRead;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    Interval(f64, f64),
    Unbounded,
}

impl Support {
    pub fn contains(&self, t: f64) -> bool {
        match *self {
            Support::Interval(lo, hi) => t >= lo && t <= hi,
            Support::Unbounded => true,
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            Support::Interval(lo, hi) => Some((lo, hi)),
            Support::Unbounded => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothness {
    ClosedForm,
    Tabulated,
    BandLimited,
}

/// A function of the spectral parameter with a declared support.
///
/// Evaluation outside the support returns 0 regardless of the underlying
/// formula.
#[derive(Clone)]
pub struct MultiplierProfile {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    support: Support,
    smoothness: Smoothness,
    label: String,
}

impl fmt::Debug for MultiplierProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierProfile")
            .field("label", &self.label)
            .field("support", &self.support)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

/// Parameters of the Bochner-Riesz profile `(1 − λ/R)^α_+`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieszParams {
    pub alpha: f64,
    pub r: f64,
}

impl RieszParams {
    pub fn new(alpha: f64, r: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be >= 0, got {alpha}")));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("R must be > 0, got {r}")));
        }
        Ok(RieszParams { alpha, r })
    }
}

/// `exp(1 − 1/(1 − t²))` on `(−1, 1)`: a smooth bump with peak 1 at 0.
pub fn unit_bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t * t)).exp()
    }
}

impl MultiplierProfile {
    pub fn new<F>(label: impl Into<String>, support: Support, smoothness: Smoothness, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        MultiplierProfile { f: Arc::new(f), support, smoothness, label: label.into() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.support.contains(t) {
            (self.f)(t)
        } else {
            0.0
        }
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero() -> Self {
        Self::new("zero", Support::Interval(0.0, 0.0), Smoothness::ClosedForm, |_| 0.0)
    }

    /// `(1 − λ/R)^α` on `[0, R]`; `α = 0` is the indicator.
    pub fn riesz(params: RieszParams) -> Self {
        let RieszParams { alpha, r } = params;
        Self::new(format!("riesz(alpha={alpha},R={r})"), Support::Interval(0.0, r), Smoothness::ClosedForm, move |t| {
            if t < 0.0 || t > r {
                0.0
            } else if alpha == 0.0 {
                1.0
            } else {
                (1.0 - t / r).powf(alpha)
            }
        })
    }

    /// Smooth bump supported on `[lo, hi]` with peak 1 at the midpoint.
    pub fn bump(lo: f64, hi: f64) -> Self {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        Self::new(format!("bump[{lo},{hi}]"), Support::Interval(lo, hi), Smoothness::ClosedForm, move |t| {
            unit_bump((t - mid) / half)
        })
    }

    /// Indicator of the closed interval `[lo, hi]`.
    pub fn indicator(lo: f64, hi: f64) -> Self {
        Self::new(format!("indicator[{lo},{hi}]"), Support::Interval(lo, hi), Smoothness::ClosedForm, |_| 1.0)
    }

    /// `F(λ) = λ` on `[lo, hi]`.
    pub fn identity_on(lo: f64, hi: f64) -> Self {
        Self::new(format!("identity[{lo},{hi}]"), Support::Interval(lo, hi), Smoothness::ClosedForm, |t| t)
    }

    /// Piecewise-linear interpolation of `(theta, value)` pairs; zero outside.
    pub fn tabulated(theta: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if theta.len() != values.len() || theta.len() < 2 {
            return Err(Error::InvalidParameter("tabulated profile needs matching columns with at least 2 rows".into()));
        }
        if theta.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("tabulated theta must be strictly increasing".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index: i });
        }
        let support = Support::Interval(theta[0], theta[theta.len() - 1]);
        Ok(Self::new("tabulated", support, Smoothness::Tabulated, move |t| {
            let i = theta.partition_point(|&s| s <= t);
            if i == 0 {
                values[0]
            } else if i >= theta.len() {
                values[theta.len() - 1]
            } else {
                let w = (t - theta[i - 1]) / (theta[i] - theta[i - 1]);
                values[i - 1] + w * (values[i] - values[i - 1])
            }
        }))
    }

    /// Reads CSV `theta,value`.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut theta = Vec::new();
        let mut values = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let line = line.trim();
            if i == 0 {
                if line != "theta,value" {
                    return Err(Error::Parse(format!("expected header 'theta,value', got '{line}'")));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 2 fields", i + 1)))?;
            let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)));
            theta.push(parse(a)?);
            values.push(parse(b)?);
        }
        Self::tabulated(theta, values)
    }

    /// CSV `theta,value` sampled at `n` equispaced points of `[lo, hi]`.
    pub fn to_csv(&self, lo: f64, hi: f64, n: usize) -> String {
        let mut out = String::from("theta,value\n");
        for i in 0..n {
            let t = lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64;
            out.push_str(&format!("{:.16e},{:.16e}\n", t, self.eval(t)));
        }
        out
    }

    /// `θ ↦ F(θ/scale)`, the profile of `F(L/scale)` in absolute energy.
    pub fn rescaled(&self, scale: f64) -> Self {
        let inner = self.clone();
        let support = match self.support {
            Support::Interval(lo, hi) => Support::Interval(lo * scale, hi * scale),
            Support::Unbounded => Support::Unbounded,
        };
        Self::new(format!("{}(./{scale})", self.label), support, self.smoothness, move |t| inner.eval(t / scale))
    }

    /// `a·F + b·G` on the hull of both supports.
    pub fn combine(a: f64, f: &Self, b: f64, g: &Self) -> Self {
        let support = match (f.support, g.support) {
            (Support::Interval(l1, h1), Support::Interval(l2, h2)) => Support::Interval(l1.min(l2), h1.max(h2)),
            _ => Support::Unbounded,
        };
        let smoothness = if f.smoothness == g.smoothness { f.smoothness } else { Smoothness::Tabulated };
        let (f, g) = (f.clone(), g.clone());
        Self::new("combination", support, smoothness, move |t| a * f.eval(t) + b * g.eval(t))
    }

    /// Largest `|F|` found at `samples` points outside the support within `margin`.
    pub fn leak_outside_support(&self, margin: f64, samples: usize) -> f64 {
        let Some((lo, hi)) = self.support.bounds() else {
            return 0.0;
        };
        (1..=samples)
            .flat_map(|i| {
                let d = margin * i as f64 / samples as f64;
                [(self.f)(lo - d), (self.f)(hi + d)]
            })
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

//! Band-limited approximation `G` of a profile `F` supported in `[1/2, 1]`.
//!
//! `F` is lifted to the even function `F̃(s) = F(s²)`, convolved with the
//! mollifier `ψ_h` (Fourier transform supported in `[−h, h]`, `h = λ^{3/2}/6`),
//! and mapped back with `G(θ) = G̃(√θ)`. The operator `G(L/λ)` then has
//! kernel support within `|x − y| ≤ h/√λ`, which is what makes it agree with
//! `G(A/λ)` away from the origin.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex;
use rustfft::FftPlanner;

use super::{MultiplierProfile, Smoothness, Support};
use crate::error::{Error, Result};
use crate::numerics::{integrate_breaks, integrate_real, QuadratureRule};

/// Number of samples of the lifted profile on `[−2, 2)`.
pub const LIFT_POINTS: usize = 1 << 14;

/// Half-width of the periodic window in the `√θ` variable.
const LIFT_HALF_WIDTH: f64 = 2.0;

fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| raw_cumulative(1.0))
}

fn raw_cumulative(t: f64) -> f64 {
    let g = |u: f64| (-1.0 / (1.0 - u * u)).exp();
    integrate_breaks(move |u| if u.abs() < 1.0 { g(u) } else { 0.0 }, &[-1.0, t.clamp(-1.0, 1.0)], 1.0 / 64.0)
        .expect("bump integrand is finite")
}

/// Normalised cumulative integral of the standard bump on `[−1, 1]`.
fn smooth_step(t: f64) -> f64 {
    if t <= -1.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        raw_cumulative(t) / bump_mass()
    }
}

/// `ψ̂(ω)`: indicator of `[−3/4, 3/4]` convolved with a unit-mass bump of
/// radius `1/4`. Smooth, even, `1` on `[−1/2, 1/2]`, `0` outside `[−1, 1]`.
pub fn mollifier_hat(omega: f64) -> f64 {
    let w = omega.abs();
    if w <= 0.5 {
        1.0
    } else if w >= 1.0 {
        0.0
    } else {
        smooth_step(4.0 * (omega + 0.75)) - smooth_step(4.0 * (omega - 0.75))
    }
}

/// The split `F = G + H` at energy scale `λ`.
#[derive(Clone, Debug)]
pub struct GHSplit {
    pub lambda_scale: f64,
    pub mollifier_bandwidth: f64,
    pub g_part: MultiplierProfile,
    pub h_part: MultiplierProfile,
    band: Arc<Band>,
}

/// `G̃(s) = Σ_k c_k cos(ω_k s)` with `ω_k = πk/2 ≤ h`.
#[derive(Debug)]
struct Band {
    terms: Vec<(f64, f64)>,
}

impl Band {
    fn lifted(&self, s: f64) -> f64 {
        self.terms.iter().map(|&(w, c)| c * (w * s).cos()).sum()
    }

    /// `G̃(i·r) = Σ c_k cosh(ω_k r)`.
    fn lifted_imaginary(&self, r: f64) -> f64 {
        self.terms.iter().map(|&(w, c)| c * (w * r).cosh()).sum()
    }

    fn g(&self, theta: f64) -> f64 {
        if theta >= 0.0 {
            if theta > LIFT_HALF_WIDTH * LIFT_HALF_WIDTH {
                0.0
            } else {
                self.lifted(theta.sqrt())
            }
        } else {
            self.lifted_imaginary((-theta).sqrt())
        }
    }
}

impl GHSplit {
    /// `G̃(s)`, the band-limited lift.
    pub fn lifted_g(&self, s: f64) -> f64 {
        self.band.lifted(s)
    }

    /// `(ω_k, c_k)` with `G̃(s) = Σ c_k cos(ω_k s)`.
    pub fn band_terms(&self) -> &[(f64, f64)] {
        &self.band.terms
    }

    /// `‖H‖_{L²(ℝ₊)}`.
    pub fn h_norm_l2(&self) -> f64 {
        let h = &self.h_part;
        let top = LIFT_HALF_WIDTH * LIFT_HALF_WIDTH;
        let width = (0.25 / self.mollifier_bandwidth).min(1e-2);
        let rule = QuadratureRule::gauss_legendre_for_width(0.0, top, width).expect("valid rule");
        integrate_real(|t: f64| h.eval(t).powi(2), 0.0, top, rule).expect("finite").sqrt()
    }

    /// `max |H|` over a fine sampling of `[0, 4]`.
    pub fn h_norm_sup(&self) -> f64 {
        let top = LIFT_HALF_WIDTH * LIFT_HALF_WIDTH;
        let n = 40_000;
        (0..=n).map(|i| self.h_part.eval(top * i as f64 / n as f64).abs()).fold(0.0, f64::max)
    }

    /// Relative spectral mass of `G̃` sampled on the lift grid outside `[−h, h]`.
    pub fn out_of_band_mass(&self) -> f64 {
        let samples: Vec<f64> = (0..LIFT_POINTS).map(|j| self.lifted_g(lift_point(j))).collect();
        let spectrum = dft(&samples);
        let mut inside = 0.0;
        let mut outside = 0.0;
        for (k, z) in spectrum.iter().enumerate() {
            let w = frequency(k).abs();
            if w <= self.mollifier_bandwidth {
                inside += z.norm_sqr();
            } else {
                outside += z.norm_sqr();
            }
        }
        (outside / inside.max(f64::MIN_POSITIVE)).sqrt()
    }
}

fn lift_point(j: usize) -> f64 {
    -LIFT_HALF_WIDTH + 2.0 * LIFT_HALF_WIDTH * j as f64 / LIFT_POINTS as f64
}

/// Angular frequency of DFT bin `k` on the lift grid.
fn frequency(k: usize) -> f64 {
    let signed = if k < LIFT_POINTS / 2 { k as f64 } else { k as f64 - LIFT_POINTS as f64 };
    2.0 * PI * signed / (2.0 * LIFT_HALF_WIDTH)
}

fn dft(samples: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Splits `F` (supported in `[1/2, 1]`) at scale `λ` with bandwidth `λ^{3/2}/6`.
pub fn gh_split(f: &MultiplierProfile, lambda_scale: f64) -> Result<GHSplit> {
    if !(lambda_scale > 1.0) {
        return Err(Error::InvalidParameter(format!("lambda_scale must exceed 1, got {lambda_scale}")));
    }
    gh_split_with_bandwidth(f, lambda_scale, lambda_scale.powf(1.5) / 6.0)
}

/// [`gh_split`] with an explicit mollifier bandwidth `h`.
pub fn gh_split_with_bandwidth(f: &MultiplierProfile, lambda_scale: f64, bandwidth: f64) -> Result<GHSplit> {
    match f.support() {
        Support::Interval(lo, hi) if lo >= 0.5 && hi <= 1.0 => {}
        Support::Interval(lo, hi) => {
            return Err(Error::ProfileSupport(format!("support [{lo}, {hi}] is not inside [1/2, 1]")));
        }
        Support::Unbounded => return Err(Error::ProfileSupport("support is unbounded".into())),
    }
    let nyquist = PI * LIFT_POINTS as f64 / (2.0 * LIFT_HALF_WIDTH);
    if !(bandwidth > 0.0 && bandwidth < nyquist) {
        return Err(Error::InvalidParameter(format!("bandwidth {bandwidth} outside (0, {nyquist})")));
    }
    let lifted: Vec<f64> = (0..LIFT_POINTS)
        .map(|j| {
            let s = lift_point(j);
            f.eval(s * s)
        })
        .collect();
    let spectrum = dft(&lifted);
    let n = LIFT_POINTS as f64;
    let mut terms = Vec::new();
    for (k, z) in spectrum.iter().enumerate().take(LIFT_POINTS / 2) {
        let w = frequency(k);
        let cut = mollifier_hat(w / bandwidth);
        if cut == 0.0 {
            break;
        }
        // Undo the shift of the grid origin to s = −2; the result is real by evenness.
        let a = (z * Complex::from_polar(1.0, w * LIFT_HALF_WIDTH)).re / n * cut;
        terms.push((w, if k == 0 { a } else { 2.0 * a }));
    }
    let band = Arc::new(Band { terms });
    let top = LIFT_HALF_WIDTH * LIFT_HALF_WIDTH;
    let g_band = band.clone();
    let g_part = MultiplierProfile::new(
        format!("G[lambda={lambda_scale}]"),
        Support::Interval(-1.0, top),
        Smoothness::BandLimited,
        move |t| g_band.g(t),
    );
    let f_owned = f.clone();
    let h_band = band.clone();
    let h_part = MultiplierProfile::new(
        format!("H[lambda={lambda_scale}]"),
        Support::Interval(-1.0, top),
        Smoothness::Tabulated,
        move |t| f_owned.eval(t) - h_band.g(t),
    );
    Ok(GHSplit { lambda_scale, mollifier_bandwidth: bandwidth, g_part, h_part, band })
}

//! Large-argument expansions with optimally truncated series and a
//! compensated phase `ζ = 2|x|^{3/2}/3`.

use std::sync::OnceLock;

use crate::scalar::Scalar;

const MAX_TERMS: usize = 96;

/// `(u_k, v_k)` of the standard Airy asymptotic series.
fn coefficients() -> &'static [(f64, f64)] {
    static COEFFS: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_TERMS);
        let mut u = 1.0f64;
        out.push((1.0, 1.0));
        for k in 1..MAX_TERMS {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

/// Double-word value `hi + lo`.
#[derive(Clone, Copy, Debug)]
pub struct Dd<T> {
    pub hi: T,
    pub lo: T,
}

fn two_prod<T: Scalar>(a: T, b: T) -> Dd<T> {
    let hi = a * b;
    Dd { hi, lo: a.mul_add(b, -hi) }
}

fn two_sum<T: Scalar>(a: T, b: T) -> Dd<T> {
    let hi = a + b;
    let bb = hi - a;
    Dd { hi, lo: (a - (hi - bb)) + (b - bb) }
}

fn quick_two_sum<T: Scalar>(a: T, b: T) -> Dd<T> {
    let hi = a + b;
    Dd { hi, lo: b - (hi - a) }
}

/// `ζ = (2/3)·z^{3/2}` for `z > 0`, carried to roughly twice working precision.
pub fn zeta_dd<T: Scalar>(z: T) -> Dd<T> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let s = z.sqrt();
    let s_lo = (-s).mul_add(s, z) / (two * s);
    let p = two_prod(z, s);
    let p_lo = p.lo + z * s_lo;
    let c_hi = two / three;
    let c_lo = (-c_hi).mul_add(three, two) / three;
    let q = two_prod(p.hi, c_hi);
    let q_lo = q.lo + p.hi * c_lo + p_lo * c_hi;
    quick_two_sum(q.hi, q_lo)
}

/// `ζ − π/4` reduced to `[−π, π]`, accurate to a few ulps of the result.
pub fn reduced_phase<T: Scalar>(zeta: Dd<T>) -> T {
    let pi_hi = T::PI();
    let pi_lo = T::lit(T::PI_LO);
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let head = two_sum(zeta.hi, -pi_hi / four);
    let phi = quick_two_sum(head.hi, head.lo + zeta.lo - pi_lo / four);
    let tau_hi = two * pi_hi;
    let tau_lo = two * pi_lo;
    let n = (phi.hi / tau_hi).round();
    let m = two_prod(n, tau_hi);
    let r = two_sum(phi.hi, -m.hi);
    r.hi + (r.lo + phi.lo - m.lo - n * tau_lo)
}

/// Sums of the optimally truncated series in `1/ζ`.
///
/// Returns `(Σ(−1)^k u_k ζ^{−k}, Σ(−1)^k v_k ζ^{−k})` for the monotone case and
/// the even/odd split `(P_u, Q_u, P_v, Q_v)` for the oscillatory case.
struct Sums<T> {
    pu: T,
    qu: T,
    pv: T,
    qv: T,
}

fn series<T: Scalar>(zeta: T, oscillatory: bool) -> Sums<T> {
    let coeffs = coefficients();
    let eps = T::lit(T::EPS * 0.125);
    let inv = zeta.recip();
    let mut s = Sums { pu: T::zero(), qu: T::zero(), pv: T::zero(), qv: T::zero() };
    let mut power = T::one();
    let mut last = T::infinity();
    for (k, &(u, v)) in coeffs.iter().enumerate() {
        let tu = T::lit(u) * power;
        let tv = T::lit(v) * power;
        let size = tu.abs().max(tv.abs());
        if size > last {
            break;
        }
        last = size;
        if oscillatory {
            // Even and odd terms alternate separately: (−1)^{⌊k/2⌋}.
            let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
            if k % 2 == 0 {
                s.pu = s.pu + sign * tu;
                s.pv = s.pv + sign * tv;
            } else {
                s.qu = s.qu + sign * tu;
                s.qv = s.qv + sign * tv;
            }
        } else {
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            s.pu = s.pu + sign * tu;
            s.pv = s.pv + sign * tv;
        }
        if size <= eps {
            break;
        }
        power = power * inv;
    }
    s
}

/// `(Ai(x), Ai'(x))` for large positive `x`.
pub(crate) fn decaying<T: Scalar>(x: T) -> (T, T) {
    let zeta = zeta_dd(x);
    let s = series(zeta.hi, false);
    let damp = (-zeta.hi).exp() * (T::one() - zeta.lo);
    let q = x.sqrt().sqrt();
    let c = damp / (T::lit(2.0) * T::PI().sqrt());
    (c * s.pu / q, -c * q * s.pv)
}

/// `(Ai(x), Ai'(x))` for large negative `x`.
pub(crate) fn oscillating<T: Scalar>(x: T) -> (T, T) {
    let z = -x;
    let zeta = zeta_dd(z);
    let s = series(zeta.hi, true);
    let phi = reduced_phase(zeta);
    let (sin, cos) = phi.sin_cos();
    let q = z.sqrt().sqrt();
    let c = T::PI().sqrt().recip();
    let ai = c / q * (cos * s.pu + sin * s.qu);
    let aip = c * q * (sin * s.pv - cos * s.qv);
    (ai, aip)
}

/// Amplitude `θ` with `Ai(x) ≈ 2·Re(e^{iζ}θ)` from the truncated series,
/// i.e. `θ = (π^{−1/2}|x|^{−1/4}/2)(P − iQ)e^{−iπ/4}`; `x < 0`.
pub(crate) fn theta_series<T: Scalar>(x: T) -> (T, T, T) {
    let z = -x;
    let zeta = zeta_dd(z);
    let s = series(zeta.hi, true);
    let amp = T::PI().sqrt().recip() / z.sqrt().sqrt() / T::lit(2.0);
    let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    // (P − iQ)(1 − i)/√2
    let re = amp * r * (s.pu - s.qu);
    let im = -amp * r * (s.pu + s.qu);
    (zeta.hi, re, im)
}

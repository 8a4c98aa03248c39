//! Exact-arithmetic reference for `Ai` and `Ai'`.
//!
//! An `f64` argument is a dyadic rational `M/2^s`, so every Maclaurin term of
//! the two basic solutions of `y'' = xy` is rational and can be carried in
//! fixed point with a large binary scale. Cancellation at `x = −60` costs
//! about 450 bits, hence the 640-bit fraction.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const FRAC_BITS: u64 = 640;

const AI0: &str = "3550280538878172392600631860041831763979791741991772405833265103008100424501267129571742460540402716884204487303494958397582926704461619371050402400225853863840099026010357128190515682032902491696447661823279677702418989594796173489086406257323897601";
const NEG_AI_PRIME0: &str = "2588194037928067984051835601892039634790911383549345822100018138561027726767902806541964058272753843133711932117891333812750359521676260147850509898484194466320296448888056018783833051269505251282933424979998835707490792590601589510509443220893840597";

fn fixed_from_decimal_fraction(digits: &str) -> BigInt {
    let num: BigInt = digits.parse().unwrap();
    let den = BigInt::from(10u32).pow(digits.len() as u32);
    (num << FRAC_BITS) / den
}

fn to_f64(v: &BigInt) -> f64 {
    // Keep 64 significant bits before converting so the rounding is clean.
    let bits = v.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (v >> shift as usize).to_f64().unwrap();
    top * 2f64.powi((shift - FRAC_BITS as i64) as i32)
}

/// Splits a finite `f64` into `(M, s)` with `x = M / 2^s` and `s ≥ 0`.
fn dyadic(x: f64) -> (BigInt, u32) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000 };
    let e = exp - 1075;
    let m = BigInt::from(sign) * BigInt::from(mant);
    if e >= 0 {
        (m << e as usize, 0)
    } else {
        (m, (-e) as u32)
    }
}

/// `(Ai(x), Ai'(x))` rounded to `f64`.
pub fn airy(x: f64) -> (f64, f64) {
    let (m, s) = dyadic(x);
    let one = BigInt::one() << FRAC_BITS;
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let s2 = 2 * s as usize;
    let s3 = 3 * s as usize;
    let x_fixed = (&m << FRAC_BITS as usize) >> s as usize;

    // f = Σ t_k, t_k = t_{k−1}·x³/((3k)(3k−1));   f' = Σ_{k≥1} t_{k−1}·x²/(3k−1)
    // g = Σ r_k, r_k = r_{k−1}·x³/((3k+1)(3k)), r_0 = x;   g' = 1 + Σ_{k≥1} r_{k−1}·x²/(3k)
    let mut t = one.clone();
    let mut r = x_fixed.clone();
    let mut f = t.clone();
    let mut g = r.clone();
    let mut fp = BigInt::zero();
    let mut gp = one.clone();
    let floor = BigInt::one() << 4;
    for k in 1u64.. {
        let a = BigInt::from(3 * k);
        let tp = (&t * &m2 / (&a - 1u32)) >> s2;
        let rp = (&r * &m2 / &a) >> s2;
        t = (&t * &m3 / (&a * (&a - 1u32))) >> s3;
        r = (&r * &m3 / ((&a + 1u32) * &a)) >> s3;
        f += &t;
        g += &r;
        fp += &tp;
        gp += &rp;
        if k > 4 && t.abs() < floor && r.abs() < floor && tp.abs() < floor && rp.abs() < floor {
            break;
        }
    }
    let c1 = fixed_from_decimal_fraction(AI0);
    let c2 = fixed_from_decimal_fraction(NEG_AI_PRIME0);
    let ai = (&c1 * &f - &c2 * &g) >> FRAC_BITS as usize;
    let aip = (&c1 * &fp - &c2 * &gp) >> FRAC_BITS as usize;
    (to_f64(&ai), to_f64(&aip))
}

/// Bisection on the oracle for a sign change of `Ai` (`derivative = false`) or `Ai'`.
pub fn bisect_zero(mut lo: f64, mut hi: f64, derivative: bool) -> f64 {
    let f = |x: f64| {
        let (a, ap) = airy(x);
        if derivative { ap } else { a }
    };
    let mut flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

mod common;

use anharmonic::airy::{self, ai, ai_pair, ai_prime_zeros, ai_zeros, asymptotic_pieces, THETA_ENVELOPE};
use common::oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn agrees_with_exact_series_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..400 {
        let x: f64 = rng.gen_range(-60.0..20.0);
        let (a, ap) = oracle::airy(x);
        let e = ai(x).unwrap();
        worst.0 = worst.0.max(rel(e.ai, a));
        worst.1 = worst.1.max(rel(e.ai_prime, ap));
    }
    assert!(worst.0 <= 1e-11 && worst.1 <= 1e-11, "worst relative errors {worst:?}");
}

#[test]
fn origin_values_match_oracle() {
    let (a, ap) = oracle::airy(0.0);
    assert!((a - 0.355028053887817).abs() < 1e-15);
    assert!((ap + 0.258819403792807).abs() < 1e-15);
    assert_eq!(a, airy::AI0);
    assert_eq!(-ap, airy::NEG_AI_PRIME0);
}

#[test]
fn first_zeros_match_oracle_bisection() {
    let a = ai_zeros::<f64>(2).unwrap();
    let b = ai_prime_zeros::<f64>(3).unwrap();
    let tol = 1e-13;
    assert!((a.zeros[0] - oracle::bisect_zero(-3.0, -2.0, false)).abs() < tol);
    assert!((a.zeros[1] - oracle::bisect_zero(-4.5, -3.5, false)).abs() < tol);
    assert!((b.zeros[0] - oracle::bisect_zero(-1.5, -0.5, true)).abs() < tol);
    assert!((b.zeros[2] - oracle::bisect_zero(-5.0, -4.6, true)).abs() < tol);
    assert!((a.zeros[0] + 2.33810741045977).abs() < 1e-13);
    assert!((b.zeros[2] + 4.82009921117874).abs() < 1e-13);
}

#[test]
fn ode_residual_by_second_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-4;
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-60.0..20.0);
        let (a, ap) = ai_pair(x);
        let second = (ai_pair(x + h).0 - 2.0 * a + ai_pair(x - h).0) / (h * h);
        let bound = 1e-6 * (1.0 + x.abs()) * a.abs().max(ap.abs());
        assert!((second - x * a).abs() <= bound, "x = {x}");
    }
}

#[test]
fn oscillatory_envelope() {
    let mut x = -10.0f64;
    while x >= -1e4 {
        for k in 0..7 {
            let t = x * (1.0 + 0.013 * k as f64);
            if t < -1e4 {
                break;
            }
            let v = ai(t).unwrap().ai;
            assert!(v.abs() <= 0.6 * t.abs().powf(-0.25), "x = {t}");
        }
        x *= 1.37;
    }
}

#[test]
fn decomposition_reconstructs_values() {
    let mut x = -5.0f64;
    while x > -2000.0 {
        let p = asymptotic_pieces(x).unwrap();
        let (a, _) = oracle_or_main(x);
        let env = x.abs().powf(-0.25);
        assert!((p.reconstruct() - a).abs() <= 1e-9 * a.abs().max(1e-3 * env), "x = {x}");
        x *= 1.21;
    }
    let p = asymptotic_pieces(-25.0).unwrap();
    let (a, _) = oracle::airy(-25.0);
    assert!((p.reconstruct() - a).abs() <= 1e-9 * a.abs());
}

fn oracle_or_main(x: f64) -> (f64, f64) {
    if x >= -60.0 {
        oracle::airy(x)
    } else {
        ai_pair(x)
    }
}

#[test]
fn theta_envelope_constant_holds() {
    // The frozen constant is the fitted maximum of |θ|(1+|x|)^{1/4} with headroom.
    let mut fitted = 0.0f64;
    let mut x = -1.0001f64;
    while x > -1e4 {
        let p = asymptotic_pieces(x).unwrap();
        fitted = fitted.max(p.theta.norm() * (1.0 - x).powf(0.25));
        x = x * 1.01 - 0.01;
    }
    assert!(fitted <= THETA_ENVELOPE, "fitted {fitted}");
    assert!(fitted >= 0.9 * THETA_ENVELOPE, "constant is loose: {fitted}");
}

#[test]
fn large_zero_counts_converge() {
    let a = ai_zeros::<f64>(10_000).unwrap();
    let b = ai_prime_zeros::<f64>(10_000).unwrap();
    // Past |x| ≈ 100 the residual is limited by one ulp of the zero times the
    // slope, so the check is scaled by that floor.
    for (za, zb) in a.zeros.iter().zip(&b.zeros) {
        let (_, slope_a) = ai_pair(*za);
        let floor_a = (2.0 * f64::EPSILON * za.abs() * slope_a.abs()).max(1e-12);
        assert!(ai_pair(*za).0.abs() <= floor_a, "Ai({za})");
        let (a_at_b, _) = ai_pair(*zb);
        let floor_b = (2.0 * f64::EPSILON * zb.abs() * (zb * a_at_b).abs()).max(1e-12);
        assert!(ai_pair(*zb).1.abs() <= floor_b, "Ai'({zb})");
    }
    let mut merged: Vec<(f64, bool)> = a.zeros.iter().map(|&z| (z, true)).chain(b.zeros.iter().map(|&z| (z, false))).collect();
    merged.sort_by(|p, q| q.0.partial_cmp(&p.0).unwrap());
    for w in merged.windows(2) {
        assert!(w[0].0 > w[1].0);
        assert_ne!(w[0].1, w[1].1, "interlacing broken near {}", w[0].0);
    }
}

#[test]
fn single_precision_agrees_roughly() {
    for x in [-40.0f64, -7.3, -1.2, 0.0, 0.7, 3.3, 9.1] {
        let (a, _) = oracle::airy(x);
        let e = ai(x as f32).unwrap();
        let env = if x < 0.0 { x.abs().powf(-0.25) } else { a.abs() };
        assert!(((e.ai as f64) - a).abs() <= 5e-5 * env, "x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn matches_oracle(x in -60.0f64..20.0) {
        let (a, ap) = oracle::airy(x);
        let e = ai(x).unwrap();
        prop_assert!(rel(e.ai, a) <= 1e-11, "Ai({}) = {} vs {}", x, e.ai, a);
        prop_assert!(rel(e.ai_prime, ap) <= 1e-11, "Ai'({}) = {} vs {}", x, e.ai_prime, ap);
    }
}

mod common;

use anharmonic::airy_operator::*;
use anharmonic::{Exponent, Grid, GridFunction, MultiplierProfile, Smoothness, Support};
use common::fixtures::{canonical_functions, plancherel_gap, plancherel_pairs};
use common::oracle;
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn l2(g: &GridFunction) -> f64 {
    g.lp_norm(Exponent::Finite(2.0)).unwrap()
}

fn zero_on(lo: f64, hi: f64) -> MultiplierProfile {
    MultiplierProfile::new("zero", Support::Interval(lo, hi), Smoothness::ClosedForm, |_| 0.0)
}

#[test]
fn transform_is_isometric_and_invertible() {
    let plan = AiryTransformPlan::standard();
    let one = Complex::new(1.0, 0.0);
    for (name, f) in canonical_functions() {
        let g = GridFunction::sample_real(plan.grid, f).unwrap();
        let tg = airy_transform(&plan, &g).unwrap();
        let ratio = l2(&tg) / l2(&g);
        assert!((ratio - 1.0).abs() <= 1e-6, "{name}: ratio {ratio}");
        let back = airy_inverse_transform(&plan, &tg).unwrap();
        let err = l2(&back.axpby(one, &g, -one).unwrap()) / l2(&g);
        assert!(err <= 1e-5, "{name}: round trip {err}");
    }
}

#[test]
fn transform_matches_direct_convolution() {
    // Off-step spectral grid forces the direct path instead of the table.
    let grid = Grid::new(-8.0, 8.0, 1601).unwrap();
    let spectral = Grid::new(-15.0, 50.0, 1001).unwrap();
    let plan = AiryTransformPlan::trapezoid(grid, spectral).unwrap();
    let f = |x: f64| (-(x - 1.0f64).powi(2) / 2.0).exp();
    let g = GridFunction::sample_real(grid, f).unwrap();
    let tg = airy_transform(&plan, &g).unwrap();
    for j in [0, 250, 400, 777] {
        let lam = spectral.point(j);
        let direct: f64 = (0..grid.n_points()).map(|i| grid.weight(i) * f(grid.point(i)) * oracle::airy(grid.point(i) - lam).0).sum();
        assert!((tg.values()[j].re - direct).abs() <= 1e-13, "lambda = {lam}");
    }
}

#[test]
fn zero_maps_to_zero() {
    let plan = AiryTransformPlan::standard();
    let z = GridFunction::zeros(plan.grid);
    assert!(airy_transform(&plan, &z).unwrap().values().iter().all(|v| v.norm() == 0.0));
    let z = GridFunction::zeros(plan.spectral_grid);
    assert!(airy_inverse_transform(&plan, &z).unwrap().values().iter().all(|v| v.norm() == 0.0));
}

#[test]
fn leaking_input_is_rejected() {
    let plan = AiryTransformPlan::standard();
    let g = GridFunction::sample_real(plan.grid, |x| (-(x - 9.0f64).powi(2)).exp()).unwrap();
    assert_eq!(airy_transform(&plan, &g).unwrap_err().tag(), "domain too small");
    let wrong = GridFunction::zeros(Grid::new(-5.0, 5.0, 11).unwrap());
    assert_eq!(airy_transform(&plan, &wrong).unwrap_err().tag(), "incompatible grids");
}

#[test]
fn windowed_airy_row_concentrates_at_its_energy() {
    let grid = Grid::new(-20.0, 20.0, 4001).unwrap();
    let plan = AiryTransformPlan::trapezoid(grid, Grid::new(-30.0, 80.0, 11_001).unwrap()).unwrap();
    let lam0 = 3.0;
    let g = GridFunction::sample_real(grid, |x| (-x * x / 12.5).exp() * anharmonic::airy::ai_value(x - lam0)).unwrap();
    let tg = airy_transform(&plan, &g).unwrap();
    let (j, _) = tg
        .values()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    assert!((plan.spectral_grid.point(j) - lam0).abs() < 0.25);
}

#[test]
fn indicator_kernel_matches_closed_form() {
    // ∫_a^b Ai(x−μ)Ai(y−μ)dμ = [Ai(x−μ)Ai'(y−μ) − Ai'(x−μ)Ai(y−μ)]_a^b / (x − y),
    // and on the diagonal the antiderivative of Ai(t)² is tAi(t)² − Ai'(t)².
    let (a, b) = (2.0, 6.0);
    let f = MultiplierProfile::indicator(a, b);
    let wronskian = |x: f64, y: f64, m: f64| {
        let (u, du) = oracle::airy(x - m);
        let (v, dv) = oracle::airy(y - m);
        u * dv - du * v
    };
    for (x, y) in [(1.0, -3.0), (4.5, 0.25), (-7.0, 2.0)] {
        let exact = (wronskian(x, y, b) - wronskian(x, y, a)) / (x - y);
        let k = airy_kernel_value(&f, x, y).unwrap();
        assert!((k - exact).abs() <= 1e-12, "({x}, {y}): {k} vs {exact}");
    }
    let anti = |t: f64| {
        let (v, dv) = oracle::airy(t);
        t * v * v - dv * dv
    };
    let x = 3.0;
    let exact = anti(x - a) - anti(x - b);
    assert!((airy_kernel_value(&f, x, x).unwrap() - exact).abs() <= 1e-12);
}

#[test]
fn kernel_is_symmetric() {
    let f = MultiplierProfile::bump(0.0, 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let x = rng.gen_range(-15.0..10.0);
        let y = rng.gen_range(-15.0..10.0);
        let d = (airy_kernel_value(&f, x, y).unwrap() - airy_kernel_value(&f, y, x).unwrap()).abs();
        assert!(d <= 1e-9, "({x}, {y}): {d}");
    }
}

#[test]
fn row_agrees_with_pointwise_values() {
    let f = MultiplierProfile::bump(-2.0, 12.0);
    let grid = Grid::new(-6.0, 6.0, 13).unwrap();
    let row = airy_multiplier_kernel_row(&f, 1.5, grid).unwrap();
    for (x, v) in row.iter() {
        let k = airy_kernel_value(&f, x, 1.5).unwrap();
        assert!((v.re - k).abs() <= 1e-12 * (1.0 + k.abs()));
    }
}

#[test]
fn kernel_row_errors_and_zero() {
    let grid = Grid::new(-5.0, 5.0, 101).unwrap();
    let row = airy_multiplier_kernel_row(&zero_on(0.0, 10.0), 1.0, grid).unwrap();
    assert!(row.values().iter().all(|v| v.norm() == 0.0));
    let wide = MultiplierProfile::new("exp", Support::Unbounded, Smoothness::ClosedForm, |t| (-t * t).exp());
    assert_eq!(airy_multiplier_kernel_row(&wide, 1.0, grid).unwrap_err().tag(), "profile decay");
}

#[test]
fn plancherel_row_identity() {
    for (x, f) in plancherel_pairs() {
        let gap = plancherel_gap(x, &f).unwrap();
        assert!(gap <= 1e-6, "x = {x}, {}: {gap:e}", f.label());
    }
}

#[test]
fn narrow_band_kernel_satisfies_eigenrelation() {
    // With F the indicator of [λ0 − ε, λ0 + ε], (−D² + x)K(·, y) ≈ λ0 K(·, y).
    let lam0 = 10.0;
    let f = MultiplierProfile::indicator(lam0 - 0.05, lam0 + 0.05);
    let h = 0.01;
    let grid = Grid::new(-5.0, 12.0, 1701).unwrap();
    let k = airy_multiplier_kernel_row(&f, 2.0, grid).unwrap().real_parts();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..k.len() - 1 {
        let ak = -(k[i + 1] - 2.0 * k[i] + k[i - 1]) / (h * h) + grid.point(i) * k[i];
        num += (ak - lam0 * k[i]).powi(2);
        den += (lam0 * k[i]).powi(2);
    }
    let residual = (num / den).sqrt();
    assert!(residual <= 5e-3, "residual {residual}");
}

fn propagation_grid(lambda: f64, y: f64) -> Grid {
    Grid::new(y - lambda / 2.0, y + lambda / 2.0, 801).unwrap()
}

#[test]
fn finite_propagation_agreement() {
    let f = MultiplierProfile::bump(0.5, 1.0);
    let (lambda, y) = (40.0, 15.0);
    let diff = verify_finite_propagation(&f, lambda, y, propagation_grid(lambda, y)).unwrap();
    assert!(diff <= 1e-3, "difference {diff}");
}

#[test]
fn finite_propagation_preconditions() {
    let f = MultiplierProfile::bump(0.5, 1.0);
    let err = verify_finite_propagation(&f, 40.0, 9.0, propagation_grid(40.0, 9.0)).unwrap_err();
    assert_eq!(err.tag(), "propagation precondition");
    let z = zero_on(0.5, 1.0);
    assert_eq!(verify_finite_propagation(&z, 40.0, 15.0, propagation_grid(40.0, 15.0)).unwrap(), 0.0);
}

#[test]
fn kernel_bound_examples() {
    let grid = Grid::new(-160.0, 60.0, 4401).unwrap();
    let r = verify_kernel_bound(&MultiplierProfile::bump(-4.0, 4.0), 30.0, 4, grid, Some(KernelRegime::A)).unwrap();
    assert!(r.fitted_c.is_finite() && r.fitted_c > 0.0);
    assert!(r.max_violation_ratio <= 1.0);
    assert!((r.d - 30f64.sqrt() / 4.0).abs() < 1e-15);

    let r = verify_kernel_bound(&zero_on(-4.0, 4.0), 30.0, 4, grid, None).unwrap();
    assert_eq!((r.fitted_c, r.max_violation_ratio), (0.0, 0.0));

    let wide = Grid::new(-600.0, 600.0, 12001).unwrap();
    let w = MultiplierProfile::bump(-0.1, 0.1);
    for y in [50.0, -50.0] {
        let r = verify_kernel_bound(&w, y, 4, wide, Some(KernelRegime::B)).unwrap();
        assert!(r.fitted_c > 0.0 && r.max_violation_ratio <= 1.0, "y = {y}: {r:?}");
    }
    let err = verify_kernel_bound(&w, 50.0, 4, wide, Some(KernelRegime::A)).unwrap_err();
    assert_eq!(err.tag(), "regime");
}

#[test]
fn kernel_bound_report_json() {
    let r = KernelBoundReport { a: 4.0, y: -30.0, d: 1.5, l: 4, fitted_c: 2.0, max_violation_ratio: 0.5 };
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["a", "d", "fitted_C", "l", "max_violation_ratio", "y"]);
}

#[test]
fn regime_selection() {
    assert_eq!(KernelRegime::select(4.0, 30.0), KernelRegime::A);
    assert_eq!(KernelRegime::select(0.1, 50.0), KernelRegime::B);
    assert_eq!(KernelRegime::select(0.5, 0.2), KernelRegime::B);
    assert_eq!(KernelRegime::select(1.0, 0.2), KernelRegime::A);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_is_linear(c1 in -3.0f64..3.0, c2 in -3.0f64..3.0, s in 0.8f64..1.2) {
        let grid = Grid::new(-10.0, 10.0, 801).unwrap();
        let spectral = Grid::new(-20.0, 80.0, 4001).unwrap();
        let plan = AiryTransformPlan::trapezoid(grid, spectral).unwrap();
        let f = GridFunction::sample_real(grid, |x| (-x * x / (2.0 * s * s)).exp()).unwrap();
        let g = GridFunction::sample_real(grid, |x| x * (-x * x / 2.0).exp()).unwrap();
        let (a, b) = (Complex::new(c1, 0.0), Complex::new(c2, 0.0));
        let lhs = airy_transform(&plan, &f.axpby(a, &g, b).unwrap()).unwrap();
        let rhs = airy_transform(&plan, &f).unwrap().axpby(a, &airy_transform(&plan, &g).unwrap(), b).unwrap();
        let one = Complex::new(1.0, 0.0);
        prop_assert!(l2(&lhs.axpby(one, &rhs, -one).unwrap()) <= 1e-12 * (1.0 + l2(&lhs)));
    }

    #[test]
    fn kernel_symmetry_random(x in -12.0f64..8.0, y in -12.0f64..8.0, lo in -5.0f64..5.0, w in 1.0f64..10.0) {
        let f = MultiplierProfile::bump(lo, lo + w);
        let d = airy_kernel_value(&f, x, y).unwrap() - airy_kernel_value(&f, y, x).unwrap();
        prop_assert!(d.abs() <= 1e-9);
    }
}

use anharmonic::profile_lab::*;
use anharmonic::spectrum::build_basis_up_to;
use anharmonic::{Exponent, Grid, GridFunction, MultiplierProfile, SpectralBasis};
use num_complex::Complex;
use proptest::prelude::*;
use std::sync::OnceLock;

fn basis() -> &'static SpectralBasis {
    static B: OnceLock<SpectralBasis> = OnceLock::new();
    B.get_or_init(|| build_basis_up_to(160.0).unwrap())
}

fn slope_of(series: &[SeriesPoint]) -> f64 {
    let xs: Vec<f64> = series.iter().map(|s| s.lambda.ln()).collect();
    let ys: Vec<f64> = series.iter().map(|s| s.estimate.value.ln()).collect();
    fit_slope(&xs, &ys)
}

#[test]
fn critical_exponent_shape() {
    for i in 0..=400 {
        let t = i as f64 / 400.0;
        let a = alpha_critical_reciprocal(t);
        assert!((a - alpha_critical_reciprocal(1.0 - t)).abs() < 1e-15);
        assert_eq!(a == 0.0, (0.25..=0.75).contains(&t), "1/p = {t}");
    }
    assert!((alpha_critical_reciprocal(0.0) - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn rank_one_norms() {
    let b = basis();
    for n in [1, 7, 50] {
        let v = rank_one_norm(b.mode(n).unwrap(), 2.0).unwrap();
        assert!((v.value - 1.0).abs() <= 1e-8);
        assert_eq!(v.kind, EstimateKind::ExactRankOne);
    }
    let m = b.mode(50).unwrap();
    let v = rank_one_norm(m, 1.0).unwrap().value;
    assert!(v >= 0.5 * m.lambda.powf(0.25), "{v}");
    assert!(rank_one_norm(m, 0.5).is_err());
}

#[test]
fn rank_one_duality() {
    let b = basis();
    for n in [3, 40, 200] {
        for p in [1.0, 1.25, 4.0 / 3.0, 3.0] {
            let q = Exponent::new(p).unwrap().conjugate().reciprocal().recip();
            let a = rank_one_norm(b.mode(n).unwrap(), p).unwrap().value;
            let c = rank_one_norm(b.mode(n).unwrap(), q).unwrap().value;
            assert!((a - c).abs() <= 1e-9 * a, "n = {n}, p = {p}");
        }
    }
}

#[test]
fn rank_one_at_four_thirds_grows_like_log() {
    let b = basis();
    let vals: Vec<f64> = [100, 200, 400, 800]
        .iter()
        .map(|&n| {
            let m = b.mode(n).unwrap();
            rank_one_norm(m, 4.0 / 3.0).unwrap().value / m.lambda.ln().powf(0.25)
        })
        .collect();
    let (lo, hi) = vals.iter().fold((f64::MAX, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    assert!(hi / lo < 1.1, "{vals:?}");
}

#[test]
fn isolating_profiles() {
    let b = basis();
    for n in [1, 2, 25, 300] {
        let f = isolating_profile(b, n).unwrap();
        for m in 1..=b.len() {
            let v = f.eval(b.mode(m).unwrap().lambda);
            assert_eq!(v, if m == n { 1.0 } else { 0.0 }, "F_{n}(lambda_{m})");
        }
    }
    assert!(isolating_profile(b, b.len()).is_err());
    assert_eq!(eta(0.0), 1.0);
    assert_eq!(eta(std::f64::consts::FRAC_PI_2), 0.0);
}

#[test]
fn necessary_condition_slopes() {
    let b = basis();
    let p1 = necessary_condition_series(b, 1.0, 20..=200).unwrap();
    assert!((slope_of(&p1) - 0.25).abs() <= 0.05, "{}", slope_of(&p1));
    let p2 = necessary_condition_series(b, 2.0, 20..=200).unwrap();
    assert!(p2.iter().all(|s| (s.estimate.value - 1.0).abs() <= 1e-8));
    assert!(slope_of(&p2).abs() <= 0.02);
    let err = necessary_condition_series(b, 1.0, 20..=b.len()).unwrap_err();
    assert_eq!(err.tag(), "range violation");
}

#[test]
fn restricted_row_bound() {
    let b = basis();
    let f = MultiplierProfile::bump(0.375, 1.125);
    let ratios: Vec<f64> = [16.0, 32.0, 64.0, 128.0]
        .iter()
        .map(|&lam: &f64| {
            let ys: Vec<f64> = (0..=100).map(|i| -lam / 4.0 + lam / 2.0 * i as f64 / 100.0).collect();
            kernel_row_l2_bound(b, &f, lam, &ys).unwrap().value
        })
        .collect();
    let xs: Vec<f64> = [16f64, 32.0, 64.0, 128.0].iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    assert!(fit_slope(&xs, &ys) <= 0.05, "{ratios:?}");

    let zero = MultiplierProfile::new("zero", anharmonic::Support::Interval(0.5, 1.0), anharmonic::Smoothness::ClosedForm, |_| 0.0);
    assert_eq!(kernel_row_l2_bound(b, &zero, 32.0, &[0.0, 4.0]).unwrap().value, 0.0);
    assert_eq!(kernel_row_l2_bound(b, &MultiplierProfile::bump(0.2, 1.0), 32.0, &[0.0]).unwrap_err().tag(), "profile support");
    assert_eq!(kernel_row_l2_bound(b, &f, 32.0, &[9.0]).unwrap_err().tag(), "range violation");
}

#[test]
fn single_eigenvalue_row_mass_collapses() {
    // F(L/λ) = F(λ_n/λ) P_n, so the row mass is F(λ_n/λ)² φ_n(y)².
    let b = basis();
    let lam = 40.0;
    let n = b.counting_function(0.6 * lam).unwrap() + 1;
    let ln = b.mode(n).unwrap().lambda;
    let f = MultiplierProfile::new(
        "spike",
        anharmonic::Support::Interval(ln / lam - 1e-4, ln / lam + 1e-4),
        anharmonic::Smoothness::ClosedForm,
        |_| 0.7,
    );
    let y = 3.3;
    let got = anharmonic::multipliers::kernel_row_mass(b, &f.rescaled(lam), y).unwrap();
    let phi = b.mode(n).unwrap().eval(y);
    assert!((got - 0.49 * phi * phi).abs() <= 1e-15);
}

#[test]
fn scan_matches_predicted_regions() {
    let b = basis();
    let pts = profile_scan(b, &[1.0, 0.5], &[0.05, 0.1, 0.2, 0.25], &DEFAULT_R_LADDER, ScanThresholds::default()).unwrap();
    let class = |inv_p: f64, alpha: f64| {
        pts.iter().find(|p| p.inv_p == inv_p && p.alpha == alpha).unwrap().classification
    };
    assert_eq!(class(1.0, 0.05), Classification::Divergent);
    assert_eq!(class(1.0, 0.25), Classification::Convergent);
    for a in [0.05, 0.1, 0.2] {
        assert_eq!(class(0.5, a), Classification::Convergent);
    }
}

#[test]
fn scan_slopes_respect_margins() {
    let b = basis();
    let inv_p: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let alpha: Vec<f64> = (0..=10).map(|i| i as f64 * 0.05).collect();
    for p in profile_scan(b, &inv_p, &alpha, &DEFAULT_R_LADDER, ScanThresholds::default()).unwrap() {
        let crit = alpha_critical_reciprocal(p.inv_p);
        if p.alpha > crit + 0.1 {
            assert!(p.fitted_slope <= 0.01, "{p:?}");
        }
        if crit > 0.1 && p.alpha < crit - 0.1 {
            assert!(p.fitted_slope >= 0.02, "{p:?}");
        }
    }
}

#[test]
fn scan_rejects_short_basis() {
    let b = build_basis_up_to(100.0).unwrap();
    let err = profile_scan(&b, &[1.0], &[0.1], &DEFAULT_R_LADDER, ScanThresholds::default()).unwrap_err();
    assert_eq!(err.tag(), "basis cutoff too small");
}

#[test]
fn scan_outputs() {
    let p = ProfilePoint { inv_p: 1.0, alpha: 0.05, classification: Classification::Divergent, fitted_slope: 0.13 };
    let csv = scan_csv(&[p]);
    assert_eq!(csv.lines().next().unwrap(), "inv_p,alpha,slope,classification");
    assert!(csv.lines().nth(1).unwrap().ends_with(",divergent"));
    let regions = regions_csv(&[p]);
    assert!(regions.lines().nth(1).unwrap().contains("divergent,divergent"));
}

#[test]
fn lower_bounds_stay_below_row_sum_proxy() {
    let b = basis();
    let ns = snapped_ladder(b, &[8.0, 16.0, 32.0]).unwrap();
    for alpha in [0.05, 0.25] {
        for &n in &ns {
            let r = b.modes()[n].lambda;
            let grid = Grid::new(-r - 15.0, r + 15.0, ((2.0 * r + 30.0) / 0.05) as usize + 1).unwrap();
            let ys: Vec<f64> = (0..=20).map(|i| -r + 2.0 * r * i as f64 / 20.0).collect();
            let upper = row_sum_upper_proxy(b, alpha, r, grid, &ys).unwrap();
            let mode = &b.modes()[n - 1];
            let lower = (1.0 - mode.lambda / r).powf(alpha) * rank_one_norm(mode, 1.0).unwrap().value;
            assert!(lower <= upper.value, "alpha {alpha}, R {r}: {lower} > {}", upper.value);
        }
    }
}

#[test]
fn projectors() {
    let grid = Grid::new(-10.0, 10.0, 401).unwrap();
    let f = GridFunction::sample_real(grid, |x| (x * 0.3).sin() + 0.1 * x).unwrap();
    let inside = apply_projector(RestrictionProjector::new(4.0, ProjectorSide::Inside).unwrap(), &f);
    let outside = apply_projector(RestrictionProjector::new(4.0, ProjectorSide::Outside).unwrap(), &f);
    let one = Complex::new(1.0, 0.0);
    assert_eq!(inside.axpby(one, &outside, one).unwrap().values(), f.values());
    let twice = apply_projector(RestrictionProjector::new(4.0, ProjectorSide::Inside).unwrap(), &inside);
    assert_eq!(twice.values(), inside.values());
    let l2 = |g: &GridFunction| g.inner_product(g).unwrap().re;
    assert!((l2(&inside) + l2(&outside) - l2(&f)).abs() <= 1e-12 * l2(&f));
    let half = apply_projector(RestrictionProjector::new(2.5, ProjectorSide::Halfline).unwrap(), &f);
    for (x, v) in half.iter() {
        assert_eq!(v.re, if x >= 2.5 { f.values()[grid_index(x)].re } else { 0.0 });
    }
    assert!(RestrictionProjector::new(0.0, ProjectorSide::Inside).is_err());
}

fn grid_index(x: f64) -> usize {
    ((x + 10.0) / 0.05).round() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn critical_exponent_is_lipschitz(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let d = (alpha_critical_reciprocal(a) - alpha_critical_reciprocal(b)).abs();
        prop_assert!(d <= 2.0 / 3.0 * (a - b).abs() + 1e-15);
    }

    #[test]
    fn critical_exponent_in_p(p in 1.0f64..50.0) {
        let a = alpha_critical(p).unwrap();
        prop_assert!((0.0..=1.0 / 6.0 + 1e-15).contains(&a));
        let q = p / (p - 1.0);
        if q.is_finite() {
            prop_assert!((a - alpha_critical(q).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn projector_is_idempotent(r in 0.1f64..9.0, shift in -3.0f64..3.0) {
        let grid = Grid::new(-10.0, 10.0, 201).unwrap();
        let f = GridFunction::sample_real(grid, |x| (x - shift).cos()).unwrap();
        for side in [ProjectorSide::Inside, ProjectorSide::Outside, ProjectorSide::Halfline] {
            let p = RestrictionProjector::new(r, side).unwrap();
            let once = apply_projector(p, &f);
            let twice = apply_projector(p, &once);
            prop_assert_eq!(twice.values(), once.values());
        }
    }
}

use std::f64::consts::PI;

use anharmonic::airy_operator::{
    default_bandwidth, finite_propagation_report, plancherel_sides, verify_kernel_bound, KernelBoundReport,
};
use anharmonic::profile_lab::{fit_slope, kernel_row_l2_bound};
use anharmonic::spectrum::{build_basis, build_basis_up_to, gram_matrix};
use anharmonic::{Grid, MultiplierProfile, SpectralBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::args::{Format, Suite};
use crate::output::{Failure, Output};

pub struct Options {
    pub count: Option<usize>,
    pub lambda_scale: Option<f64>,
    pub y: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct Check {
    name: String,
    value: f64,
    limit: String,
    passed: bool,
}

fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Check {
    Check { name: name.into(), value, limit: format!("<= {limit:e}"), passed: value <= limit }
}

fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Check {
    Check { name: name.into(), value, limit: format!(">= {limit:e}"), passed: value >= limit }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Gaps => "gaps",
        Suite::Asymptotics => "asymptotics",
        Suite::Ortho => "ortho",
        Suite::Plancherel => "plancherel",
        Suite::Propagation => "propagation",
        Suite::I4res => "i4res",
        Suite::KernelBounds => "kernel-bounds",
    }
}

pub fn run(suite: Suite, opts: Options, format: Format) -> Result<Output, Failure> {
    let (checks, extra) = match suite {
        Suite::Gaps => (gaps(opts.count.unwrap_or(500))?, None),
        Suite::Asymptotics => (asymptotics(opts.count.unwrap_or(500))?, None),
        Suite::Ortho => (ortho(opts.count.unwrap_or(30))?, None),
        Suite::Plancherel => (plancherel(opts.seed, opts.count.unwrap_or(3))?, None),
        Suite::Propagation => (propagation(opts.lambda_scale.unwrap_or(40.0), opts.y.unwrap_or(15.0))?, None),
        Suite::I4res => (i4res()?, None),
        Suite::KernelBounds => {
            let (checks, reports) = kernel_bounds(opts.y)?;
            (checks, Some(json!(reports)))
        }
    };
    let name = suite_name(suite);
    let passed = checks.iter().all(|c| c.passed);
    let mut report = json!({ "suite": name, "passed": passed, "checks": checks });
    if let Some(extra) = extra {
        report["reports"] = extra;
    }
    if !passed {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        return Err(Failure::Contract { suite: name.into(), message: format!("failed: {}", failed.join(", ")), report });
    }
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("check,value,limit,passed\n");
            for c in &checks {
                out.push_str(&format!("{},{:.6e},{},{}\n", c.name, c.value, c.limit, c.passed));
            }
            out
        }
    };
    Ok(Output::new(body))
}

fn gaps(count: usize) -> Result<Vec<Check>, Failure> {
    let basis: SpectralBasis = build_basis(count + 1)?;
    let (mut lower, mut upper) = (f64::INFINITY, f64::INFINITY);
    for w in basis.modes().windows(2) {
        let gap = w[1].lambda - w[0].lambda;
        lower = lower.min(gap - 0.5 * PI / w[1].lambda.sqrt());
        upper = upper.min(0.5 * PI / w[0].lambda.sqrt() - gap);
    }
    Ok(vec![
        at_least("min slack of pi/2 lambda_(n+1)^-1/2 <= gap", lower, -1e-9),
        at_least("min slack of gap <= pi/2 lambda_n^-1/2", upper, -1e-9),
    ])
}

fn asymptotics(count: usize) -> Result<Vec<Check>, Failure> {
    let basis: SpectralBasis = build_basis(count)?;
    let start = count.min(100);
    let dev = (start..=count)
        .map(|n| (basis.modes()[n - 1].lambda * (3.0 * PI * n as f64 / 4.0).powf(-2.0 / 3.0) - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(vec![at_most(format!("max |lambda_n (3 pi n/4)^(-2/3) - 1| for n in [{start}, {count}]"), dev, 0.02)])
}

fn ortho(count: usize) -> Result<Vec<Check>, Failure> {
    let basis: SpectralBasis = build_basis(count)?;
    let g = gram_matrix(&basis, count)?;
    let mut dev: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            dev = dev.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(vec![at_most(format!("max |G - I| over {count} modes"), dev, 1e-8)])
}

fn plancherel_gap(x: f64, f: &MultiplierProfile) -> Result<f64, Failure> {
    let (_, hi) = f.support().bounds().expect("bump support is bounded");
    let (lo, top) = (x - 200.0, hi + 20.0);
    let grid = Grid::new(lo, top, ((top - lo) / 0.02).round() as usize + 1)?;
    let (lhs, rhs) = plancherel_sides(f, x, grid)?;
    Ok((lhs - rhs).abs() / rhs)
}

fn plancherel(seed: Option<u64>, extra: usize) -> Result<Vec<Check>, Failure> {
    let mut pairs = vec![
        (3.7, MultiplierProfile::bump(10.0, 20.0)),
        (12.0, MultiplierProfile::bump(10.0, 20.0)),
        (-5.0, MultiplierProfile::bump(0.0, 8.0)),
        (7.0, MultiplierProfile::bump(5.0, 25.0)),
        (-2.0, MultiplierProfile::bump(-5.0, 5.0)),
    ];
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra {
            pairs.push((rng.gen_range(-5.0..12.0), MultiplierProfile::bump(10.0, 20.0)));
        }
    }
    pairs
        .iter()
        .map(|(x, f)| Ok(at_most(format!("relative gap at x = {x} for {}", f.label()), plancherel_gap(*x, f)?, 1e-6)))
        .collect()
}

fn propagation(lambda: f64, y: f64) -> Result<Vec<Check>, Failure> {
    let f = MultiplierProfile::bump(0.5, 1.0);
    let grid = Grid::new(y - lambda / 2.0, y + lambda / 2.0, 801)?;
    let ladder = [4.0, 2.0, 1.0]
        .iter()
        .map(|&k| Ok(finite_propagation_report(&f, lambda, y, grid, k * default_bandwidth(lambda))?.relative_sup_diff))
        .collect::<Result<Vec<_>, Failure>>()?;
    let decreasing = ladder.windows(2).all(|w| w[1] < w[0]);
    let mut checks: Vec<Check> = [4, 2, 1]
        .iter()
        .zip(&ladder)
        .map(|(k, &d)| at_most(format!("relative sup difference at bandwidth factor {k}"), d, if *k == 1 { 1e-3 } else { f64::INFINITY }))
        .collect();
    checks.push(Check {
        name: "difference decreases from factor 4 to factor 1".into(),
        value: if decreasing { 1.0 } else { 0.0 },
        limit: "== 1".into(),
        passed: decreasing,
    });
    Ok(checks)
}

fn i4res() -> Result<Vec<Check>, Failure> {
    let lambdas = [16.0, 32.0, 64.0, 128.0];
    let basis = build_basis_up_to(1.125 * 128.0)?;
    let f = MultiplierProfile::bump(0.375, 1.125);
    let ratios = lambdas
        .iter()
        .map(|&lam: &f64| {
            let ys: Vec<f64> = (0..=100).map(|i| -lam / 4.0 + lam / 2.0 * i as f64 / 100.0).collect();
            Ok(kernel_row_l2_bound(&basis, &f, lam, &ys)?.value.ln())
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
    Ok(vec![at_most("log-slope of the I4res ratio over lambda = 16..128", fit_slope(&xs, &ratios), 0.05)])
}

fn kernel_bounds(y: Option<f64>) -> Result<(Vec<Check>, Vec<KernelBoundReport>), Failure> {
    let ys = y.map_or(vec![-30.0, -60.0], |y| vec![y]);
    let grid = Grid::new(-160.0, 60.0, 4401)?;
    let mut reports = Vec::new();
    for a in [4.0, 8.0] {
        for &y in &ys {
            reports.push(verify_kernel_bound(&MultiplierProfile::bump(-a, a), y, 4, grid, None)?);
        }
    }
    let (lo, hi) = reports.iter().fold((f64::INFINITY, 0.0f64), |(l, h), r| (l.min(r.fitted_c), h.max(r.fitted_c)));
    let worst = reports.iter().map(|r| r.max_violation_ratio).fold(0.0, f64::max);
    let checks = vec![at_most("spread of fitted C across the sweep", hi / lo, 4.0), at_most("worst post-fit ratio", worst, 1.0)];
    Ok((checks, reports))
}

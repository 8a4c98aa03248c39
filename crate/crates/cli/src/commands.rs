use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anharmonic::airy_operator::{airy_inverse_transform, airy_multiplier_kernel_row, airy_transform, AiryTransformPlan};
use anharmonic::multipliers::{apply_multiplier, multiplier_kernel_row};
use anharmonic::profile_lab::{profile_scan, regions_csv, scan_csv, ScanThresholds};
use anharmonic::spectrum::{build_basis, build_basis_up_to};
use anharmonic::{Exponent, Grid, GridFunction, MultiplierProfile, RieszParams, SpectralBasis};
use num_complex::Complex;
use serde_json::json;

use crate::args::{Cli, Command, Format, Operator};
use crate::output::{Failure, Output};
use crate::verify;

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.common.format;
    match &cli.command {
        Command::Eig { count, cutoff } => {
            let basis: SpectralBasis = match (count, cutoff) {
                (Some(n), _) => build_basis(*n)?,
                (None, Some(c)) => build_basis_up_to(*c)?,
                (None, None) => return Err(Failure::Usage("eig needs --count or --cutoff".into())),
            };
            Ok(Output::new(match format {
                Format::Csv => basis.to_csv(),
                Format::Json => basis.to_json() + "\n",
            }))
        }
        Command::Eval { count, grid } => eval(*count, grid.0, format),
        Command::Apply { input, alpha, r, cutoff } => {
            let f = read_function(input)?;
            let profile = MultiplierProfile::riesz(RieszParams::new(*alpha, *r)?);
            let basis = build_basis_up_to(cutoff.unwrap_or(*r))?;
            Ok(Output::new(function_output(&apply_multiplier(&basis, &profile, &f)?, format)))
        }
        Command::Kernel { operator, y, alpha, r, grid, cutoff } => {
            let profile = MultiplierProfile::riesz(RieszParams::new(*alpha, *r)?);
            let row = match operator {
                Operator::L => multiplier_kernel_row(&build_basis_up_to(cutoff.unwrap_or(*r))?, &profile, *y, grid.0)?,
                Operator::A => airy_multiplier_kernel_row(&profile, *y, grid.0)?,
            };
            Ok(Output::new(function_output(&row, format)))
        }
        Command::Transform { input, grid } => {
            let f = match input {
                Some(path) => read_function(path)?,
                None => GridFunction::sample_real(grid.0, |x| (-x * x / 2.0).exp())?,
            };
            transform(&f, format)
        }
        Command::Scan { p_grid, alpha_grid, r_ladder, cutoff, divergent_slope, convergent_slope } => {
            if convergent_slope > divergent_slope {
                return Err(Failure::Usage("--convergent-slope must not exceed --divergent-slope".into()));
            }
            let inv_p = p_grid.0.iter().map(|&p| Ok(Exponent::new(p)?.reciprocal())).collect::<Result<Vec<_>, Failure>>()?;
            let basis = build_basis_up_to(*cutoff)?;
            let thresholds = ScanThresholds { divergent: *divergent_slope, convergent: *convergent_slope };
            let points = profile_scan(&basis, &inv_p, &alpha_grid.0, &r_ladder.0, thresholds)?;
            let body = match format {
                Format::Csv => scan_csv(&points),
                Format::Json => serde_json::to_string_pretty(&points).expect("points serialize") + "\n",
            };
            Ok(Output { body, side_files: vec![(".regions.csv", regions_csv(&points))] })
        }
        Command::Verify { suite, count, lambda_scale, y, seed } => {
            verify::run(*suite, verify::Options { count: *count, lambda_scale: *lambda_scale, y: *y, seed: *seed }, format)
        }
    }
}

fn read_function(path: &Path) -> Result<GridFunction, Failure> {
    let file = File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(GridFunction::read_csv(BufReader::new(file))?)
}

fn function_output(f: &GridFunction, format: Format) -> String {
    match format {
        Format::Csv => f.to_csv(),
        Format::Json => {
            let xs: Vec<f64> = f.grid().points().collect();
            let re: Vec<f64> = f.values().iter().map(|v| v.re).collect();
            let im: Vec<f64> = f.values().iter().map(|v| v.im).collect();
            json!({ "x": xs, "re": re, "im": im }).to_string() + "\n"
        }
    }
}

fn eval(count: usize, grid: Grid, format: Format) -> Result<Output, Failure> {
    let basis: SpectralBasis = build_basis(count)?;
    let columns: Vec<Vec<f64>> = basis.modes().iter().map(|m| grid.points().map(|x| m.eval(x)).collect()).collect();
    let body = match format {
        Format::Csv => {
            let mut out = String::from("x");
            for m in basis.modes() {
                out.push_str(&format!(",phi_{}", m.n));
            }
            out.push('\n');
            for (i, x) in grid.points().enumerate() {
                out.push_str(&format!("{x:.16e}"));
                for col in &columns {
                    out.push_str(&format!(",{:.16e}", col[i]));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let modes: Vec<_> = basis
                .modes()
                .iter()
                .zip(&columns)
                .map(|(m, values)| json!({ "n": m.n, "lambda": m.lambda, "values": values }))
                .collect();
            let xs: Vec<f64> = grid.points().collect();
            json!({ "x": xs, "modes": modes }).to_string() + "\n"
        }
    };
    Ok(Output::new(body))
}

fn transform(f: &GridFunction, format: Format) -> Result<Output, Failure> {
    let grid = *f.grid();
    let step = grid.step();
    let spectral = Grid::new(-20.0, 80.0, (100.0 / step).round() as usize + 1)?;
    let plan = AiryTransformPlan::trapezoid(grid, spectral)?;
    let tf = airy_transform(&plan, f)?;
    let back = airy_inverse_transform(&plan, &tf)?;
    let l2 = |g: &GridFunction| g.lp_norm(Exponent::Finite(2.0));
    let one = Complex::new(1.0, 0.0);
    let norm = l2(f)?;
    let ratio = if norm == 0.0 { 1.0 } else { l2(&tf)? / norm };
    let err = l2(&back.axpby(one, f, -one)?)?;
    let rel = if norm == 0.0 { err } else { err / norm };
    let body = match format {
        Format::Csv => tf.to_csv(),
        Format::Json => {
            let lam: Vec<f64> = spectral.points().collect();
            let re: Vec<f64> = tf.values().iter().map(|v| v.re).collect();
            json!({
                "l2_ratio": ratio,
                "round_trip_rel_error": rel,
                "spectral_grid": format!("{}:{}:{}", spectral.lo(), spectral.hi(), spectral.n_points()),
                "lambda": lam,
                "transform": re,
            })
            .to_string()
                + "\n"
        }
    };
    Ok(Output::new(body))
}

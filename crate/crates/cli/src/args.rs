use std::path::PathBuf;

use anharmonic::{parse_fraction, Grid};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "anharmonic", version, about = "Spectral calculus for -d²/dx² + |x| and the Airy operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the output here (plus PATH.manifest.json) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the library's parallel loops.
    #[arg(long, env = "ANHARMONIC_THREADS", global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Operator {
    /// The anharmonic oscillator -d²/dx² + |x|
    #[value(name = "L", alias = "l")]
    L,
    /// The Airy operator -d²/dx² + x
    #[value(name = "A", alias = "a")]
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gaps,
    Asymptotics,
    Ortho,
    Plancherel,
    Propagation,
    I4res,
    KernelBounds,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Eigenvalues and normalisation constants.
    Eig {
        /// Number of eigenpairs.
        #[arg(long, conflicts_with = "cutoff", required_unless_present = "cutoff")]
        count: Option<usize>,
        /// Every eigenvalue up to this energy.
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Samples of the first COUNT eigenfunctions.
    Eval {
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid, default_value = "-20:20:801")]
        grid: GridArg,
    },
    /// Applies the Bochner-Riesz mean (1 - λ/R)^α_+ of L to a CSV function `x,re,im`.
    Apply {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long = "R", default_value_t = 20.0)]
        r: f64,
        /// Basis cutoff; defaults to R.
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Kernel row K(·, y) of the Bochner-Riesz mean of L or A.
    Kernel {
        #[arg(value_enum)]
        operator: Operator,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        y: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long = "R", default_value_t = 20.0)]
        r: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid, default_value = "-30:30:1201")]
        grid: GridArg,
        /// Basis cutoff for L; defaults to R.
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Airy transform of a CSV function (a Gaussian if omitted) with a round-trip check.
    Transform {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid, default_value = "-10:10:2001")]
        grid: GridArg,
    },
    /// Convergence profile of the Bochner-Riesz means over (1/p, α).
    Scan {
        #[arg(long = "p-grid", value_parser = parse_list, default_value = "1,4/3,2,4")]
        p_grid: ListArg,
        #[arg(long = "alpha-grid", allow_hyphen_values = true, value_parser = parse_range, default_value = "0:0.5:0.05")]
        alpha_grid: ListArg,
        #[arg(long = "r-ladder", value_parser = parse_list, default_value = "8,16,32,64,128")]
        r_ladder: ListArg,
        #[arg(long, default_value_t = 160.0)]
        cutoff: f64,
        /// Slope at or above which a point is divergent.
        #[arg(long = "divergent-slope", default_value_t = 0.02)]
        divergent_slope: f64,
        /// Slope at or below which a point is convergent.
        #[arg(long = "convergent-slope", default_value_t = 0.01)]
        convergent_slope: f64,
    },
    /// Runs a named verification suite; exits 1 if it fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long = "lambda-scale")]
        lambda_scale: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        /// Draws extra random sample points (plancherel).
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A grid given as `LO:HI:N`.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(into = "String")]
pub struct GridArg(pub Grid);

impl From<GridArg> for String {
    fn from(g: GridArg) -> String {
        format!("{}:{}:{}", g.0.lo(), g.0.hi(), g.0.n_points())
    }
}

/// A list of numbers parsed from the command line.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct ListArg(pub Vec<f64>);

fn parse_grid(s: &str) -> Result<GridArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected LO:HI:N, got '{s}'"));
    };
    let lo = parse_fraction(lo).map_err(|e| e.to_string())?;
    let hi = parse_fraction(hi).map_err(|e| e.to_string())?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad point count '{n}'"))?;
    Grid::new(lo, hi, n).map(GridArg).map_err(|e| e.to_string())
}

fn parse_number(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        t => parse_fraction(t).map_err(|e| e.to_string()),
    }
}

fn parse_list(s: &str) -> Result<ListArg, String> {
    s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>().map(ListArg)
}

/// `LO:HI:STEP`, inclusive of `HI` up to rounding.
fn parse_range(s: &str) -> Result<ListArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(format!("expected LO:HI:STEP, got '{s}'"));
    };
    let (lo, hi, step) = (parse_number(lo)?, parse_number(hi)?, parse_number(step)?);
    if !(step > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(format!("empty or unbounded range '{s}'"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok(ListArg((0..=count).map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12).collect()))
}

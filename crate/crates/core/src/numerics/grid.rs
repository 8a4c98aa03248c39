use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::Exponent;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Uniform 1-D grid including both endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    lo: T,
    hi: T,
    n_points: usize,
}

impl<T: Scalar> Grid<T> {
    pub fn new(lo: T, hi: T, n_points: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidGrid(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
        }
        Ok(Grid { lo, hi, n_points })
    }

    /// Grid with the crate's default resolution.
    pub fn with_default_points(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, super::DEFAULT_GRID_POINTS)
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> T {
        (self.hi - self.lo) / T::from_count(self.n_points - 1)
    }

    pub fn point(&self, i: usize) -> T {
        if i + 1 == self.n_points {
            self.hi
        } else {
            self.lo + self.step() * T::from_count(i)
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Trapezoid weight of node `i`.
    pub fn weight(&self, i: usize) -> T {
        let h = self.step();
        if i == 0 || i + 1 == self.n_points {
            h / T::lit(2.0)
        } else {
            h
        }
    }

    /// Same endpoints and size, up to a relative tolerance on the endpoints.
    pub fn compatible(&self, other: &Grid<T>) -> bool {
        let scale = (self.hi - self.lo).abs();
        let tol = scale * T::lit(1e-12);
        self.n_points == other.n_points
            && (self.lo - other.lo).abs() <= tol
            && (self.hi - other.hi).abs() <= tol
    }
}

/// Complex samples on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T> {
    grid: Grid<T>,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(grid: Grid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::InvalidGrid(format!(
                "{} values for {} grid points",
                values.len(),
                grid.n_points()
            )));
        }
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(GridFunction { grid, values })
    }

    pub fn from_real(grid: Grid<T>, values: Vec<T>) -> Result<Self> {
        Self::new(grid, values.into_iter().map(|v| Complex::new(v, T::zero())).collect())
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        GridFunction { grid, values: vec![Complex::new(T::zero(), T::zero()); grid.n_points()] }
    }

    pub fn sample<F: FnMut(T) -> Complex<T>>(grid: Grid<T>, f: F) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn sample_real<F: FnMut(T) -> T>(grid: Grid<T>, mut f: F) -> Result<Self> {
        Self::sample(grid, |x| Complex::new(f(x), T::zero()))
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<T> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, Complex<T>)> + '_ {
        self.grid.points().zip(self.values.iter().copied())
    }

    pub fn map<F: FnMut(T, Complex<T>) -> Complex<T>>(&self, mut f: F) -> Result<Self> {
        let values = self.iter().map(|(x, v)| f(x, v)).collect();
        Self::new(self.grid, values)
    }

    /// `a·self + b·other` on a shared grid.
    pub fn axpby(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::IncompatibleGrids);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| a * u + b * v)
            .collect();
        Self::new(self.grid, values)
    }

    /// `∫ f·conj(g)` by the trapezoid rule on the shared grid.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::IncompatibleGrids);
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, (u, v)) in self.values.iter().zip(&other.values).enumerate() {
            acc = acc + *u * v.conj() * self.grid.weight(i);
        }
        Ok(acc)
    }

    /// `(∫|g|^p)^{1/p}` by the trapezoid rule, or `max |g|` for `p = ∞`.
    pub fn lp_norm(&self, p: Exponent) -> Result<T> {
        let p = p.validate()?;
        let sup = self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        match p {
            Exponent::Infinity => Ok(sup),
            Exponent::Finite(p) => {
                if sup == T::zero() {
                    return Ok(T::zero());
                }
                let pt = T::lit(p);
                let sum: T = self
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.norm() / sup).powf(pt) * self.grid.weight(i))
                    .sum();
                Ok(sup * sum.powf(T::one() / pt))
            }
        }
    }

    /// Largest sample magnitude within `margin` nodes of either end, relative to the global maximum.
    pub fn edge_fraction(&self, margin: usize) -> T {
        let n = self.values.len();
        let sup = self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        if sup == T::zero() {
            return T::zero();
        }
        let m = margin.min(n / 2);
        let edge = self.values[..m]
            .iter()
            .chain(&self.values[n - m..])
            .map(|v| v.norm())
            .fold(T::zero(), T::max);
        edge / sup
    }

    /// CSV with header `x,re,im`, 17 significant digits per field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im\n");
        for (x, v) in self.iter() {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x.as_f64(), v.re.as_f64(), v.im.as_f64());
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }

    /// Parses the `x,re,im` format; the grid is rebuilt from the first and last `x`.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        if header.trim() != "x,re,im" {
            return Err(Error::Parse(format!("expected header 'x,re,im', got '{}'", header.trim())));
        }
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 fields", lineno + 2)));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))
            };
            xs.push(parse(fields[0])?);
            values.push(Complex::new(T::lit(parse(fields[1])?), T::lit(parse(fields[2])?)));
        }
        if xs.len() < 2 {
            return Err(Error::Parse("need at least two rows".into()));
        }
        let grid = Grid::new(T::lit(xs[0]), T::lit(xs[xs.len() - 1]), xs.len())?;
        let h = grid.step().as_f64();
        for (i, &x) in xs.iter().enumerate() {
            if (x - grid.point(i).as_f64()).abs() > 1e-9 * h.max(1.0) {
                return Err(Error::Parse(format!("row {} is not on a uniform grid", i + 1)));
            }
        }
        Self::new(grid, values)
    }
}

//! Quadrature functionals on radial profiles.
//!
//! All quantities treat a profile u(r) as a radial function on the plane:
//!
//! * particle number: lambda = 2 pi int u^2 r dr
//! * log moment:      int u^2 s ln s ds  (no 2 pi; this is the convention the
//!   branch formulas consume)
//! * kinetic term:    T_m = 2 pi int (u'^2 + m^2 u^2 / r^2) r dr
//! * potential term:  V = (1/2pi) intint ln|x-y| u^2(x) u^2(y) dx dy,
//!   reduced by the planar Newton theorem (the angular average of ln|x-y|
//!   is ln max(|x|,|y|)) to V = 2 int u^2(r) ln(r) eta(r) r dr with the
//!   cumulative mass eta(r) = 2 pi int_0^r u^2 s ds.
//!
//! Integration is composite 4-point Gauss-Legendre per grid cell on the
//! interpolant the profile declares (piecewise linear or local cubic). The
//! Gauss nodes are interior, so integrable ln r factors at the origin never
//! get evaluated at r = 0.

use std::io::{BufRead, Write as IoWrite};
use std::path::Path;

use crate::error::{Error, Result};
use crate::shooting::UniversalSolution;

/// Interpolation rule a profile carries for evaluation and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interp {
    Linear,
    /// Local cubic through the four nearest nodes; used for derivatives.
    Cubic,
}

/// A sampled nonnegative radial function with cached particle number.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    lambda: f64,
    interp: Interp,
}

const MIN_SAMPLES: usize = 4;

impl RadialProfile {
    /// Validate samples and cache lambda by quadrature.
    pub fn new(grid: Vec<f64>, values: Vec<f64>, interp: Interp) -> Result<Self> {
        if grid.len() < MIN_SAMPLES || grid.len() != values.len() {
            return Err(Error::EmptyProfile {
                min: MIN_SAMPLES,
                got: grid.len().min(values.len()),
            });
        }
        if !grid[0].is_finite() || grid[0] < 0.0 {
            return Err(Error::InvalidInput(format!(
                "grid must start at r >= 0, got {}",
                grid[0]
            )));
        }
        for k in 1..grid.len() {
            if !grid[k].is_finite() || grid[k] <= grid[k - 1] {
                return Err(Error::InvalidInput(format!(
                    "grid must increase strictly (index {k})"
                )));
            }
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "values must be finite and nonnegative (index {k}: {v})"
                )));
            }
        }
        let mut p = RadialProfile {
            grid,
            values,
            lambda: 0.0,
            interp,
        };
        p.lambda = particle_number(&p);
        if p.lambda.is_nan() || p.lambda <= 0.0 {
            return Err(Error::InvalidInput("profile carries no mass".into()));
        }
        Ok(p)
    }

    /// Read a `r,u` CSV (extra columns ignored). NaN, negative, or unordered
    /// rows are rejected.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let reader = std::io::BufReader::new(file);
        let name = path.display().to_string();
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if idx == 0 {
                let mut cols = line.split(',');
                if cols.next().map(str::trim) != Some("r")
                    || cols.next().map(str::trim) != Some("u")
                {
                    return Err(Error::Parse {
                        path: name,
                        line: 1,
                        msg: format!("expected header starting with 'r,u', got '{line}'"),
                    });
                }
                continue;
            }
            let mut cols = line.split(',');
            let mut field = |what: &str| -> Result<f64> {
                cols.next()
                    .ok_or_else(|| Error::Parse {
                        path: name.clone(),
                        line: idx + 1,
                        msg: format!("missing {what} column"),
                    })?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse {
                        path: name.clone(),
                        line: idx + 1,
                        msg: format!("bad {what}: {e}"),
                    })
            };
            grid.push(field("r")?);
            values.push(field("u")?);
        }
        RadialProfile::new(grid, values, Interp::Cubic)
    }

    /// Write the profile as a `r,u` CSV with 17 significant digits.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "r,u")?;
        for (r, u) in self.grid.iter().zip(&self.values) {
            writeln!(out, "{r:.16e},{u:.16e}")?;
        }
        Ok(())
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cached particle number (always equals `particle_number(self)`).
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn interp(&self) -> Interp {
        self.interp
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    fn cell_of(&self, r: f64) -> usize {
        match self
            .grid
            .binary_search_by(|x| x.partial_cmp(&r).expect("finite grid"))
        {
            Ok(k) => k.min(self.grid.len() - 2),
            Err(0) => 0,
            Err(k) => (k - 1).min(self.grid.len() - 2),
        }
    }

    /// Interpolated value; zero beyond the last sample.
    pub fn eval(&self, r: f64) -> f64 {
        if r > *self.grid.last().unwrap() {
            return 0.0;
        }
        let (v, _) = self.eval_cell(self.cell_of(r), r);
        v
    }

    /// Interpolated derivative; zero beyond the last sample.
    pub fn eval_deriv(&self, r: f64) -> f64 {
        if r > *self.grid.last().unwrap() {
            return 0.0;
        }
        let (_, d) = self.eval_cell(self.cell_of(r), r);
        d
    }

    /// Value and derivative of the interpolant attached to cell `k` at `r`.
    fn eval_cell(&self, k: usize, r: f64) -> (f64, f64) {
        match self.interp {
            Interp::Linear => {
                let slope =
                    (self.values[k + 1] - self.values[k]) / (self.grid[k + 1] - self.grid[k]);
                (self.values[k] + slope * (r - self.grid[k]), slope)
            }
            Interp::Cubic => {
                // Newton form through the four nodes nearest the cell.
                let j = k.saturating_sub(1).min(self.grid.len() - 4);
                let x = &self.grid[j..j + 4];
                let f = &self.values[j..j + 4];
                let d01 = (f[1] - f[0]) / (x[1] - x[0]);
                let d12 = (f[2] - f[1]) / (x[2] - x[1]);
                let d23 = (f[3] - f[2]) / (x[3] - x[2]);
                let d012 = (d12 - d01) / (x[2] - x[0]);
                let d123 = (d23 - d12) / (x[3] - x[1]);
                let d0123 = (d123 - d012) / (x[3] - x[0]);
                let (t0, t1, t2) = (r - x[0], r - x[1], r - x[2]);
                let v = f[0] + d01 * t0 + d012 * t0 * t1 + d0123 * t0 * t1 * t2;
                let d = d01 + d012 * (t0 + t1) + d0123 * (t0 * t1 + t0 * t2 + t1 * t2);
                (v, d)
            }
        }
    }
}

// 4-point Gauss-Legendre on [-1, 1].
const GL_X: [f64; 4] = [
    -0.8611363115940526,
    -0.33998104358485626,
    0.33998104358485626,
    0.8611363115940526,
];
const GL_W: [f64; 4] = [
    0.34785484513745385,
    0.6521451548625461,
    0.6521451548625461,
    0.34785484513745385,
];

/// Visit quadrature spans in ascending order. The cell touching r = 0 is
/// split geometrically so integrable ln r factors cost no accuracy, without
/// the quadrature needing to know the integrand.
fn for_each_span<F: FnMut(usize, f64, f64)>(p: &RadialProfile, mut f: F) {
    for k in 0..p.grid.len() - 1 {
        let (a, b) = (p.grid[k], p.grid[k + 1]);
        if k == 0 && a == 0.0 {
            let mut lo = 0.0;
            for j in 0..=12 {
                let hi = if j == 12 { b } else { b * 0.5_f64.powi(12 - j) };
                f(k, lo, hi);
                lo = hi;
            }
        } else {
            f(k, a, b);
        }
    }
}

/// Composite Gauss-Legendre over all cells of `f(r, u, u')`.
fn integrate<F: FnMut(f64, f64, f64) -> f64>(p: &RadialProfile, mut f: F) -> f64 {
    let mut total = 0.0;
    for_each_span(p, |k, a, b| {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut cell = 0.0;
        for (x, w) in GL_X.iter().zip(&GL_W) {
            let r = mid + half * x;
            let (u, up) = p.eval_cell(k, r);
            cell += w * f(r, u, up);
        }
        total += cell * half;
    });
    total
}

/// Gauss-Legendre of `u^2 s` over `[a, b]` inside cell `k`.
fn partial_mass(p: &RadialProfile, k: usize, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL_X.iter().zip(&GL_W) {
        let s = mid + half * x;
        let (u, _) = p.eval_cell(k, s);
        acc += w * u * u * s;
    }
    acc * half
}

/// lambda = 2 pi int u^2 r dr.
pub fn particle_number(p: &RadialProfile) -> f64 {
    2.0 * std::f64::consts::PI * integrate(p, |r, u, _| u * u * r)
}

/// int u^2 s ln s ds (the I convention used by the branch formulas).
pub fn log_moment(p: &RadialProfile) -> f64 {
    integrate(p, |r, u, _| u * u * r * r.ln())
}

/// T_m = 2 pi int (u'^2 + m^2 u^2 / r^2) r dr.
///
/// For m >= 1 the centrifugal term needs u(0) = 0; a profile that starts at
/// r = 0 with positive value diverges and is rejected.
pub fn kinetic(p: &RadialProfile, m: u32) -> Result<f64> {
    if m >= 1 && p.grid[0] == 0.0 && p.values[0] > 0.0 {
        return Err(Error::CentrifugalDivergence { m, u0: p.values[0] });
    }
    let m2 = (m as f64) * (m as f64);
    Ok(2.0 * std::f64::consts::PI * integrate(p, |r, u, up| (up * up + m2 * u * u / (r * r)) * r))
}

/// V = 2 int u^2(r) ln(r) eta(r) r dr with eta(r) = 2 pi int_0^r u^2 s ds.
///
/// Profiles are treated as zero below their first sample, so grids should
/// start at (or very near) r = 0 for this functional to be meaningful.
pub fn potential_v(p: &RadialProfile) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut total = 0.0;
    let mut mass_before = 0.0;
    for_each_span(p, |k, a, b| {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut cell = 0.0;
        for (x, w) in GL_X.iter().zip(&GL_W) {
            let r = mid + half * x;
            let (u, _) = p.eval_cell(k, r);
            let eta = two_pi * (mass_before + partial_mass(p, k, a, r));
            cell += w * 2.0 * u * u * r.ln() * eta * r;
        }
        total += cell * half;
        mass_before += partial_mass(p, k, a, b);
    });
    total
}

/// Everything at once, for reports.
#[derive(Debug, Clone, Copy)]
pub struct FunctionalReport {
    pub lambda: f64,
    pub t_value: f64,
    pub log_moment: f64,
    pub v_value: f64,
    pub m: u32,
}

pub fn functional_report(p: &RadialProfile, m: u32) -> Result<FunctionalReport> {
    Ok(FunctionalReport {
        lambda: particle_number(p),
        t_value: kinetic(p, m)?,
        log_moment: log_moment(p),
        v_value: potential_v(p),
        m,
    })
}

/// Limits read off the far end of a solved trajectory:
/// N = 2 pi lim r W'(r) and I = lim (r W'(r) ln r - W(r)).
#[derive(Debug, Clone, Copy)]
pub struct TailReport {
    pub n_tail: f64,
    pub i_tail: f64,
    pub r_end: f64,
    pub w_end: f64,
}

/// Evaluate the tail formulas at the last stored sample.
///
/// Requires the grid to reach the decay region W > 1; otherwise the limits
/// have not stabilized and the call fails with [`Error::InsufficientRange`].
pub fn tail_estimates(sol: &UniversalSolution) -> Result<TailReport> {
    let last = sol
        .samples
        .last()
        .ok_or(Error::EmptyProfile { min: 1, got: 0 })?;
    if last.w <= 1.0 {
        return Err(Error::InsufficientRange { w_end: last.w });
    }
    Ok(TailReport {
        n_tail: 2.0 * std::f64::consts::PI * last.r * last.wp,
        i_tail: last.r * last.wp * last.r.ln() - last.w,
        r_end: last.r,
        w_end: last.w,
    })
}

/// Scaling identity T = N^2 / (8 pi) of the universal normalization, plus the
/// Poisson consistency residual max |r W' - int u^2 s ds|.
#[derive(Debug, Clone, Copy)]
pub struct VirialReport {
    pub t_value: f64,
    pub n_value: f64,
    /// |T - N^2/(8 pi)| / T with N from quadrature.
    pub virial_residual: f64,
    pub poisson_residual: f64,
}

pub fn virial_report(sol: &UniversalSolution) -> Result<VirialReport> {
    let p = sol.profile()?;
    let t = kinetic(&p, sol.m)?;
    let n = particle_number(&p);
    let expected = n * n / (8.0 * std::f64::consts::PI);
    let mut q = 0.0;
    let mut poisson = 0.0_f64;
    for k in 1..sol.samples.len() {
        let a = &sol.samples[k - 1];
        let b = &sol.samples[k];
        q += 0.5 * (a.u * a.u * a.r + b.u * b.u * b.r) * (b.r - a.r);
        poisson = poisson.max((b.r * b.wp - q).abs());
    }
    Ok(VirialReport {
        t_value: t,
        n_value: n,
        virial_residual: (t - expected).abs() / t,
        poisson_residual: poisson,
    })
}

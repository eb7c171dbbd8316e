//! Amplitude shooting for the universal bound-state profiles.
//!
//! The regular solution launched with g(0) = alpha either crosses zero
//! (alpha too small) or blows up (alpha too large); the bound state sits on
//! the threshold between the two classes. Because the classification is a
//! binary outcome rather than a smooth residual, the amplitude is refined by
//! bisection, which is immune to the violent growth of nearby trajectories.

use crate::error::{Error, Result};
use crate::functionals::{Interp, RadialProfile};
use crate::ode::{self, IntegratorConfig, OutcomeKind, TrajectoryOutcome};

#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// Relative width of the final amplitude bracket.
    pub alpha_tol: f64,
    pub integrator: IntegratorConfig,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig {
            alpha_lo: 0.1,
            alpha_hi: 10.0,
            alpha_tol: 1e-12,
            integrator: IntegratorConfig::default(),
        }
    }
}

/// One radial sample of a converged solution.
#[derive(Debug, Clone, Copy)]
pub struct SolutionSample {
    pub r: f64,
    pub u: f64,
    pub w: f64,
    pub wp: f64,
}

/// A converged universal profile for angular index `m`.
///
/// `samples` start at r = 0 and end where the surviving trajectory was cut;
/// beyond that radius the profile is treated as identically zero (the exact
/// tail decays super-exponentially and carries mass below the bisection
/// accuracy). `n_value` = 2 pi jn and `i_value` = ji come from the
/// ODE-carried integrals at the cut.
#[derive(Debug, Clone)]
pub struct UniversalSolution {
    pub m: u32,
    pub alpha: f64,
    pub samples: Vec<SolutionSample>,
    pub n_value: f64,
    pub i_value: f64,
    pub r_max_used: f64,
    pub bisection_width: f64,
}

impl UniversalSolution {
    /// The shooting variable g = u / r^m at sample `k` (g(0) = alpha).
    pub fn g_at(&self, k: usize) -> f64 {
        let s = &self.samples[k];
        if s.r == 0.0 {
            self.alpha
        } else {
            s.u / s.r.powi(self.m as i32)
        }
    }

    /// Radial profile (r, u) over the stored samples.
    pub fn profile(&self) -> Result<RadialProfile> {
        let grid: Vec<f64> = self.samples.iter().map(|s| s.r).collect();
        let values: Vec<f64> = self.samples.iter().map(|s| s.u).collect();
        RadialProfile::new(grid, values, Interp::Cubic)
    }
}

fn classify(alpha: f64, m: u32, cfg: &IntegratorConfig) -> Result<TrajectoryOutcome> {
    ode::integrate_universal(alpha, m, cfg)
}

struct Bracket {
    a_cross: f64,
    a_blow: f64,
    best: (f64, TrajectoryOutcome),
    decayed: Option<(f64, TrajectoryOutcome)>,
}

fn keep_best(best: &mut (f64, TrajectoryOutcome), alpha: f64, out: &TrajectoryOutcome) {
    if out.r_event > best.1.r_event {
        *best = (alpha, out.clone());
    }
}

fn bracket_internal(m: u32, cfg: &ShootingConfig) -> Result<Bracket> {
    if !(cfg.alpha_lo > 0.0 && cfg.alpha_hi >= cfg.alpha_lo) {
        return Err(Error::InvalidInput(format!(
            "need 0 < alpha_lo <= alpha_hi, got [{}, {}]",
            cfg.alpha_lo, cfg.alpha_hi
        )));
    }
    let mut lo = cfg.alpha_lo;
    let mut hi = cfg.alpha_hi;
    let mut out_lo = classify(lo, m, &cfg.integrator)?;
    let mut out_hi = classify(hi, m, &cfg.integrator)?;
    let mut best = (lo, out_lo.clone());
    keep_best(&mut best, hi, &out_hi);

    for kind in [out_lo.kind, out_hi.kind] {
        if kind == OutcomeKind::Decayed {
            let (a, o) = if out_lo.kind == OutcomeKind::Decayed {
                (lo, out_lo)
            } else {
                (hi, out_hi)
            };
            return Ok(Bracket {
                a_cross: a,
                a_blow: a,
                best: (a, o.clone()),
                decayed: Some((a, o)),
            });
        }
    }

    let mut doublings = 0u32;
    while out_lo.kind == out_hi.kind {
        if doublings >= 60 {
            return Err(Error::BracketFailed {
                alpha_lo: lo,
                alpha_hi: hi,
                doublings,
            });
        }
        doublings += 1;
        if out_lo.kind == OutcomeKind::CrossedZero {
            // Both cross: threshold lies above hi.
            hi *= 2.0;
            out_hi = classify(hi, m, &cfg.integrator)?;
            keep_best(&mut best, hi, &out_hi);
            if out_hi.kind == OutcomeKind::Decayed {
                return Ok(Bracket {
                    a_cross: hi,
                    a_blow: hi,
                    best: (hi, out_hi.clone()),
                    decayed: Some((hi, out_hi)),
                });
            }
        } else {
            // Both blow up: threshold lies below lo.
            lo /= 2.0;
            out_lo = classify(lo, m, &cfg.integrator)?;
            keep_best(&mut best, lo, &out_lo);
            if out_lo.kind == OutcomeKind::Decayed {
                return Ok(Bracket {
                    a_cross: lo,
                    a_blow: lo,
                    best: (lo, out_lo.clone()),
                    decayed: Some((lo, out_lo)),
                });
            }
        }
    }

    let (a_cross, a_blow) = if out_lo.kind == OutcomeKind::CrossedZero {
        (lo, hi)
    } else {
        (hi, lo)
    };
    Ok(Bracket {
        a_cross,
        a_blow,
        best,
        decayed: None,
    })
}

/// Find amplitudes on both sides of the bound-state threshold.
///
/// Expands the seed interval by doubling (up to 60 times) until the two
/// endpoint trajectories classify differently; errors with
/// [`Error::BracketFailed`] otherwise.
pub fn bracket_amplitude(m: u32, config: &ShootingConfig) -> Result<(f64, f64)> {
    let b = bracket_internal(m, config)?;
    let (lo, hi) = if b.a_cross <= b.a_blow {
        (b.a_cross, b.a_blow)
    } else {
        (b.a_blow, b.a_cross)
    };
    Ok((lo, hi))
}

/// Bisect the amplitude to `alpha_tol` relative width and assemble the
/// longest-surviving trajectory into a [`UniversalSolution`].
pub fn solve_universal(m: u32, config: &ShootingConfig) -> Result<UniversalSolution> {
    if !(config.alpha_tol > 0.0 && config.alpha_tol < 1.0) {
        return Err(Error::InvalidInput(format!(
            "need 0 < alpha_tol < 1, got {}",
            config.alpha_tol
        )));
    }
    let mut b = bracket_internal(m, config)?;

    let width = if b.decayed.is_some() {
        0.0
    } else {
        loop {
            let width = (b.a_blow - b.a_cross).abs();
            let mid = 0.5 * (b.a_cross + b.a_blow);
            if width <= config.alpha_tol * mid {
                break width;
            }
            let out = classify(mid, m, &config.integrator)?;
            keep_best(&mut b.best, mid, &out);
            match out.kind {
                OutcomeKind::CrossedZero => b.a_cross = mid,
                OutcomeKind::BlewUp => b.a_blow = mid,
                OutcomeKind::Decayed => {
                    b.decayed = Some((mid, out));
                    break (b.a_blow - b.a_cross).abs();
                }
            }
        }
    };
    if let Some((a, out)) = &b.decayed {
        // A decayed trajectory is the solution itself; prefer it outright.
        b.best = (*a, out.clone());
    }

    let (best_alpha, outcome) = b.best;

    // Cut the trajectory where it stops tracking the true solution: a
    // crossing trajectory is kept while g > 0, a blow-up one up to the
    // minimum of g before the spurious growth takes over.
    let states = &outcome.samples;
    let cut = match outcome.kind {
        OutcomeKind::CrossedZero => {
            let mut last = 0;
            for (k, s) in states.iter().enumerate() {
                if s.g > 0.0 {
                    last = k;
                } else {
                    break;
                }
            }
            last
        }
        OutcomeKind::BlewUp => {
            let mut arg = 0;
            let mut min = f64::INFINITY;
            for (k, s) in states.iter().enumerate() {
                if s.g < min {
                    min = s.g;
                    arg = k;
                }
            }
            arg
        }
        OutcomeKind::Decayed => states.len() - 1,
    };
    if cut < 8 {
        return Err(Error::InvalidInput(format!(
            "surviving trajectory too short ({} samples); widen r_max or loosen thresholds",
            cut + 1
        )));
    }

    let mut samples = Vec::with_capacity(cut + 2);
    samples.push(SolutionSample {
        r: 0.0,
        u: if m == 0 { best_alpha } else { 0.0 },
        w: 0.0,
        wp: 0.0,
    });
    for s in &states[..=cut] {
        samples.push(SolutionSample {
            r: s.r,
            u: s.u(m),
            w: s.w,
            wp: s.wp,
        });
    }

    let end = states[cut];
    Ok(UniversalSolution {
        m,
        alpha: best_alpha,
        samples,
        n_value: 2.0 * std::f64::consts::PI * end.jn,
        i_value: end.ji,
        r_max_used: end.r,
        bisection_width: width,
    })
}

/// Named pass/fail checks with their margins for a solved profile.
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// u > 0 strictly on 0 < r <= r_end.
    pub positivity: bool,
    pub min_u: f64,
    /// g = u / r^m strictly decreasing along the grid.
    pub monotone: bool,
    /// Largest consecutive increase of g (negative when monotone).
    pub max_g_increase: f64,
    /// Unit average decay rate over the last radial decade, and W(r_end) > 1.
    pub tail_decay: bool,
    /// Average decay rate minus 1 over [r_end / 10, r_end].
    pub tail_margin: f64,
    pub w_end: f64,
    /// max |r W' - int u^2 s ds| over the grid (quadrature route).
    pub poisson_residual: f64,
    pub poisson: bool,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.positivity && self.monotone && self.tail_decay && self.poisson
    }
}

/// Run the structural checks a converged universal profile must satisfy.
pub fn validate_solution(sol: &UniversalSolution) -> Result<ValidationReport> {
    let n = sol.samples.len();
    if n < 8 {
        return Err(Error::EmptyProfile { min: 8, got: n });
    }

    let mut min_u = f64::INFINITY;
    for s in &sol.samples[1..] {
        min_u = min_u.min(s.u);
    }
    let positivity = min_u > 0.0;

    let mut max_g_increase = f64::NEG_INFINITY;
    for k in 1..n - 1 {
        max_g_increase = max_g_increase.max(sol.g_at(k + 1) - sol.g_at(k));
    }
    let monotone = max_g_increase <= 1e-12 * sol.alpha;

    let r_end = sol.samples[n - 1].r;
    let w_end = sol.samples[n - 1].w;
    let r_anchor = r_end / 10.0;
    let u_anchor = sol
        .samples
        .iter()
        .find(|s| s.r >= r_anchor)
        .map(|s| s.u)
        .unwrap_or(sol.samples[1].u);
    let u_end = sol.samples[n - 1].u;
    let tail_margin = if u_end > 0.0 && u_anchor > 0.0 {
        (u_anchor / u_end).ln() / (r_end - r_anchor) - 1.0
    } else {
        f64::NEG_INFINITY
    };
    let tail_decay = tail_margin >= 0.0 && w_end > 1.0;

    // Quadrature route for jn: cumulative trapezoid of u^2 s over the grid,
    // checked against the ODE-carried r W'.
    let mut q = 0.0;
    let mut poisson_residual = 0.0_f64;
    for k in 1..n {
        let a = &sol.samples[k - 1];
        let b = &sol.samples[k];
        q += 0.5 * (a.u * a.u * a.r + b.u * b.u * b.r) * (b.r - a.r);
        poisson_residual = poisson_residual.max((b.r * b.wp - q).abs());
    }
    let poisson = poisson_residual <= 1e-3;

    Ok(ValidationReport {
        positivity,
        min_u,
        monotone,
        max_g_increase,
        tail_decay,
        tail_margin,
        w_end,
        poisson_residual,
        poisson,
    })
}

//! Adaptive integration of the universal radial system.
//!
//! The shooting variable g solves
//!
//! ```text
//! g'' + (2m+1)/r g' = (W - 1) g,      (rW')' = r u^2,      u = r^m g,
//! ```
//!
//! with W(0) = W'(0) = 0, so for m = 0 the variable g is the wave profile u
//! itself and for m >= 1 it is the regularized factor g = r^-m u, which keeps
//! the initial data finite: g(0) = alpha > 0, g'(0) = 0.
//!
//! Two running integrals ride along as extra components,
//! jn = int_0^r u^2 s ds and ji = int_0^r u^2 s ln s ds, so particle number
//! and log moment come out of the same adaptive grid as the trajectory. The
//! radial Poisson equation makes r W'(r) = jn(r) an exact identity, which the
//! tests use as an integration-error monitor.
//!
//! Integration runs with an embedded Dormand-Prince 5(4) pair and stops at the
//! first terminal event: the trajectory crosses zero (amplitude too small),
//! exceeds `blowup_threshold * alpha` (too large), or decays below
//! `decay_threshold * alpha` inside the W > 1 region where non-oscillatory
//! decay is guaranteed.

use crate::error::{Error, Result};

const DIM: usize = 6;

/// Full integration state at one radius.
///
/// `g` is the shooting variable (`u` for m = 0, `r^-m u` in general), `w`/`wp`
/// the potential and its derivative, `jn`/`ji` the running mass and
/// log-moment integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub r: f64,
    pub g: f64,
    pub gp: f64,
    pub w: f64,
    pub wp: f64,
    pub jn: f64,
    pub ji: f64,
}

impl OdeState {
    fn from_parts(r: f64, y: &[f64; DIM]) -> Self {
        OdeState {
            r,
            g: y[0],
            gp: y[1],
            w: y[2],
            wp: y[3],
            jn: y[4],
            ji: y[5],
        }
    }

    fn components(&self) -> [f64; DIM] {
        [self.g, self.gp, self.w, self.wp, self.jn, self.ji]
    }

    /// Wave profile u = r^m g.
    pub fn u(&self, m: u32) -> f64 {
        self.r.powi(m as i32) * self.g
    }
}

/// Tolerances and event thresholds for [`integrate_universal`].
///
/// `blowup_threshold` and `decay_threshold` are relative to the shooting
/// amplitude alpha.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub r_start: f64,
    pub r_max: f64,
    pub blowup_threshold: f64,
    pub decay_threshold: f64,
    /// Cap on the step size, which also bounds the sample spacing handed to
    /// downstream quadrature.
    pub max_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            r_start: 1e-4,
            r_max: 40.0,
            blowup_threshold: 10.0,
            decay_threshold: 1e-12,
            max_step: 0.25,
        }
    }
}

/// How a trajectory terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeKind {
    /// g changed sign: amplitude below the bound-state threshold.
    CrossedZero,
    /// |g| exceeded `blowup_threshold * alpha`: amplitude above threshold.
    BlewUp,
    /// g fell below `decay_threshold * alpha` while W > 1: converged decay.
    Decayed,
}

#[derive(Debug, Clone)]
pub struct TrajectoryOutcome {
    pub kind: OutcomeKind,
    pub r_event: f64,
    pub final_state: OdeState,
    /// Every accepted step from `r_start` to the event, event state last.
    pub samples: Vec<OdeState>,
}

/// Second-order Taylor state of the regular solution at `r_start`:
///
/// ```text
/// g  = alpha (1 - r^2 / (4(m+1))),        W  = alpha^2 r^(2m+2) / (4(m+1)^2),
/// g' = -alpha r / (2(m+1)),               W' = alpha^2 r^(2m+1) / (2m+2),
/// ```
///
/// with jn, ji from the leading density u^2 = alpha^2 r^2m. Relative error is
/// O(r_start^4), so r_start <= 1e-3 keeps it far below integrator tolerances.
pub fn series_start(alpha: f64, m: u32, r_start: f64) -> Result<OdeState> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "series_start needs alpha > 0, got {alpha}"
        )));
    }
    if r_start <= 0.0 || !r_start.is_finite() {
        return Err(Error::InvalidInput(format!(
            "series_start needs r_start > 0, got {r_start}"
        )));
    }
    let r = r_start;
    let k = 2.0 * (m as f64 + 1.0); // 2m + 2
    let a2 = alpha * alpha;
    let rk = r.powi(2 * m as i32 + 2);
    Ok(OdeState {
        r,
        g: alpha * (1.0 - r * r / (2.0 * k)),
        gp: -alpha * r / k,
        w: a2 * rk / (k * k),
        wp: a2 * rk / (k * r),
        jn: a2 * rk / k,
        ji: a2 * rk * (r.ln() / k - 1.0 / (k * k)),
    })
}

fn rhs(m: u32, r: f64, y: &[f64; DIM]) -> [f64; DIM] {
    let g = y[0];
    let gp = y[1];
    let w = y[2];
    let wp = y[3];
    let u = r.powi(m as i32) * g;
    let u2 = u * u;
    [
        gp,
        (w - 1.0) * g - (2.0 * m as f64 + 1.0) * gp / r,
        wp,
        u2 - wp / r,
        u2 * r,
        u2 * r * r.ln(),
    ]
}

// Dormand-Prince 5(4) tableau. Stage 7 equals the 5th-order result (FSAL).
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// y5 - y4 error weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const SHRINK_FLOOR: f64 = 0.2;
const GROW_CAP: f64 = 5.0;

/// Cubic Hermite interpolation of the whole state inside one accepted step.
fn hermite(
    r0: f64,
    y0: &[f64; DIM],
    d0: &[f64; DIM],
    h: f64,
    y1: &[f64; DIM],
    d1: &[f64; DIM],
    theta: f64,
) -> OdeState {
    let t = theta;
    let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    let h10 = t * (1.0 - t) * (1.0 - t);
    let h01 = t * t * (3.0 - 2.0 * t);
    let h11 = t * t * (t - 1.0);
    let mut y = [0.0; DIM];
    for i in 0..DIM {
        y[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
    }
    OdeState::from_parts(r0 + t * h, &y)
}

/// Integrate from the series start until a terminal event.
///
/// Errors with [`Error::NoEvent`] if the trajectory survives to `r_max`
/// unclassified, [`Error::StepUnderflow`] if the controller stalls.
pub fn integrate_universal(
    alpha: f64,
    m: u32,
    config: &IntegratorConfig,
) -> Result<TrajectoryOutcome> {
    if !(config.r_start > 0.0 && config.r_start < config.r_max) {
        return Err(Error::InvalidInput(format!(
            "need 0 < r_start < r_max, got r_start = {}, r_max = {}",
            config.r_start, config.r_max
        )));
    }
    if !(config.rel_tol > 0.0 && config.abs_tol > 0.0 && config.max_step > 0.0) {
        return Err(Error::InvalidInput(
            "tolerances and max_step must be positive".into(),
        ));
    }
    // NaN thresholds must be rejected too, hence the negated comparisons.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(config.blowup_threshold > 1.0) || !(config.decay_threshold < 1.0) {
        return Err(Error::InvalidInput(
            "need blowup_threshold > 1 and decay_threshold < 1".into(),
        ));
    }

    let start = series_start(alpha, m, config.r_start)?;
    let blow = config.blowup_threshold * alpha;
    let decay = config.decay_threshold * alpha;

    let mut r = start.r;
    let mut y = start.components();
    let mut d = rhs(m, r, &y);
    let mut h = (config.r_start / 4.0).min(config.max_step);
    let mut samples = vec![start];

    loop {
        if r >= config.r_max {
            return Err(Error::NoEvent {
                r_max: config.r_max,
            });
        }
        h = h.min(config.max_step).min(config.r_max - r);
        if h < 1e-13 * r.max(1.0) {
            return Err(Error::StepUnderflow { r });
        }

        // One DP45 step with FSAL: d holds f(r, y).
        let mut k = [[0.0; DIM]; 7];
        k[0] = d;
        for s in 0..6 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s + 1) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..DIM {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s + 1] = rhs(m, r + C[s] * h, &ys);
        }
        // Stage 6 weights are the 5th-order solution; stage 7 its derivative.
        let mut y1 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = A[5][j];
            if a != 0.0 {
                for i in 0..DIM {
                    y1[i] += h * a * kj[i];
                }
            }
        }
        let d1 = k[6];

        let mut err2 = 0.0;
        for i in 0..DIM {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let sc = config.abs_tol + config.rel_tol * y[i].abs().max(y1[i].abs());
            err2 += (e / sc) * (e / sc);
        }
        let err = (err2 / DIM as f64).sqrt();

        if !err.is_finite() || err > 1.0 {
            let factor = if err.is_finite() {
                (SAFETY * err.powf(-0.2)).max(SHRINK_FLOOR)
            } else {
                SHRINK_FLOOR
            };
            h *= factor;
            continue;
        }

        // Accepted. Classify before advancing.
        let g0 = y[0];
        let g1 = y1[0];
        debug_assert!(g0 > 0.0);

        if g1 <= 0.0 {
            // Sign change inside this step: locate it on the Hermite interpolant.
            let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let gm = hermite(r, &y, &k[0], h, &y1, &d1, mid).g;
                if gm > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let event = hermite(r, &y, &k[0], h, &y1, &d1, hi);
            samples.push(event);
            return Ok(TrajectoryOutcome {
                kind: OutcomeKind::CrossedZero,
                r_event: event.r,
                final_state: event,
                samples,
            });
        }

        let state1 = OdeState::from_parts(r + h, &y1);
        samples.push(state1);

        if g1 <= decay && y1[2] > 1.0 {
            return Ok(TrajectoryOutcome {
                kind: OutcomeKind::Decayed,
                r_event: state1.r,
                final_state: state1,
                samples,
            });
        }
        if g1 >= blow {
            return Ok(TrajectoryOutcome {
                kind: OutcomeKind::BlewUp,
                r_event: state1.r,
                final_state: state1,
                samples,
            });
        }

        r += h;
        y = y1;
        d = d1;
        let factor = if err == 0.0 {
            GROW_CAP
        } else {
            (SAFETY * err.powf(-0.2)).clamp(SHRINK_FLOOR, GROW_CAP)
        };
        h *= factor;
    }
}

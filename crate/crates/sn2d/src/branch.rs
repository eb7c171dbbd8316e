//! Scaling map between the universal solution and physical bound states.
//!
//! Every bound state at coupling gamma and particle number lambda is a
//! rescaling of one universal profile. The profile's two invariants, the
//! particle number N and the log moment I, combine into the threshold
//! coupling Lambda_0 = N exp(4 pi (1 + I) / N), and the frequency and ground
//! energy along the branch collapse to one-line formulas:
//!
//! * omega(lambda)  = -(gamma lambda / 4 pi) ln(gamma lambda / Lambda_0)
//! * e0(lambda)     = (gamma lambda^2 / 16 pi) (1 - 2 ln(gamma lambda / Lambda_0))
//!
//! so that d e0 / d lambda = omega. The frequency rises from zero, peaks at
//! omega_star = Lambda_0 / (4 pi e) when gamma lambda = Lambda_0 / e, and
//! falls through zero at gamma lambda = Lambda_0: positive frequencies below
//! the peak are reached by two different particle numbers.

use crate::error::{Error, Result};
use crate::functionals::{kinetic, particle_number, potential_v, tail_estimates, RadialProfile};
use crate::shooting::UniversalSolution;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Where a set of branch constants came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantsSource {
    /// Measured on a live shooting solve.
    Computed,
    /// The frozen literature values, kept as a fixture for cross-checks.
    Reference,
}

/// The invariants (N, I, Lambda_0) that parametrize a branch.
#[derive(Debug, Clone, Copy)]
pub struct BranchConstants {
    pub n_const: f64,
    pub i_const: f64,
    pub lambda0: f64,
    pub source: ConstantsSource,
}

impl BranchConstants {
    /// Validate positivity and the defining relation
    /// Lambda_0 = N exp(4 pi (1 + I) / N) to 1e-3 relative.
    pub fn new(n_const: f64, i_const: f64, lambda0: f64, source: ConstantsSource) -> Result<Self> {
        if !(n_const > 0.0 && lambda0 > 0.0 && i_const.is_finite()) {
            return Err(Error::BadParams(format!(
                "branch constants must be positive and finite (N = {n_const}, I = {i_const}, Lambda_0 = {lambda0})"
            )));
        }
        let c = BranchConstants {
            n_const,
            i_const,
            lambda0,
            source,
        };
        if c.log_inconsistency() > 1e-3 {
            return Err(Error::BadParams(format!(
                "Lambda_0 = {lambda0} is inconsistent with N exp(4 pi (1 + I) / N) = {}",
                n_const * (FOUR_PI * (1.0 + i_const) / n_const).exp()
            )));
        }
        Ok(c)
    }

    /// Measure N and I from the far field of a solved trajectory.
    ///
    /// The tail limits are cross-checked against quadrature on the profile;
    /// disagreement beyond 1e-3 relative means the solve is not trustworthy.
    pub fn from_solution(sol: &UniversalSolution) -> Result<Self> {
        let tail = tail_estimates(sol)?;
        let profile = sol.profile()?;
        let n_quad = particle_number(&profile);
        if ((tail.n_tail - n_quad) / n_quad).abs() > 1e-3 {
            return Err(Error::BadParams(format!(
                "far-field N = {} disagrees with quadrature N = {n_quad}",
                tail.n_tail
            )));
        }
        let n = tail.n_tail;
        let i = tail.i_tail;
        BranchConstants::new(
            n,
            i,
            n * (FOUR_PI * (1.0 + i) / n).exp(),
            ConstantsSource::Computed,
        )
    }

    /// Frozen literature values for the ground branch.
    pub fn reference() -> Self {
        BranchConstants {
            n_const: 10.3135,
            i_const: 0.2276,
            lambda0: 46.03,
            source: ConstantsSource::Reference,
        }
    }

    /// |ln Lambda_0 - ln N - 4 pi (1 + I) / N|: how far the stored constants
    /// are from exact internal consistency. Zero up to rounding for computed
    /// constants; a few 1e-6 for the rounded literature values. Internal
    /// two-form agreement checks budget for this explicitly.
    fn log_inconsistency(&self) -> f64 {
        (self.lambda0.ln() - self.n_const.ln() - FOUR_PI * (1.0 + self.i_const) / self.n_const)
            .abs()
    }
}

fn check_positive(lambda: f64, gamma: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite() && gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::BadParams(format!(
            "need finite lambda > 0 and gamma > 0, got lambda = {lambda}, gamma = {gamma}"
        )));
    }
    Ok(())
}

fn omega_canonical(x: f64, c: &BranchConstants) -> f64 {
    -(x / FOUR_PI) * (x / c.lambda0).ln()
}

fn e0_canonical(x: f64, gamma: f64, c: &BranchConstants) -> f64 {
    // gamma lambda^2 = x^2 / gamma.
    (x * x / gamma / (16.0 * std::f64::consts::PI)) * (1.0 - 2.0 * (x / c.lambda0).ln())
}

/// Frequency along the branch at coupling `gamma` and particle number
/// `lambda`. Evaluates both the Lambda_0 form and the (N, I) form and
/// insists they agree, which pins down transcription of either formula.
pub fn omega_of_lambda(lambda: f64, gamma: f64, c: &BranchConstants) -> Result<f64> {
    check_positive(lambda, gamma)?;
    let x = gamma * lambda;
    let omega = omega_canonical(x, c);
    let general = (x / c.n_const) * (1.0 + c.i_const) - (x / FOUR_PI) * (x / c.n_const).ln();
    let budget = 1e-6 * omega.abs().max(x / FOUR_PI) + (x / FOUR_PI) * c.log_inconsistency();
    assert!(
        (general - omega).abs() <= budget,
        "frequency forms disagree: {general} vs {omega} at gamma lambda = {x}"
    );
    Ok(omega)
}

/// Ground energy along the branch. The two closed forms are compared on
/// every call, and the derivative identity d e0 / d lambda = omega is
/// verified by a central difference.
pub fn e0_of_lambda(lambda: f64, gamma: f64, c: &BranchConstants) -> Result<f64> {
    check_positive(lambda, gamma)?;
    let x = gamma * lambda;
    let e0 = e0_canonical(x, gamma, c);
    let gl2 = gamma * lambda * lambda;
    let general = gl2
        * (1.0 / (16.0 * std::f64::consts::PI) + (1.0 + c.i_const) / (2.0 * c.n_const)
            - (x / c.n_const).ln() / (8.0 * std::f64::consts::PI));
    let scale = e0.abs().max(gl2 / (16.0 * std::f64::consts::PI));
    let budget = 1e-6 * scale + gl2 * c.log_inconsistency() / (8.0 * std::f64::consts::PI);
    assert!(
        (general - e0).abs() <= budget,
        "energy forms disagree: {general} vs {e0} at gamma lambda = {x}"
    );

    let h = 1e-5 * lambda;
    let slope = (e0_canonical(gamma * (lambda + h), gamma, c)
        - e0_canonical(gamma * (lambda - h), gamma, c))
        / (2.0 * h);
    let omega = omega_canonical(x, c);
    assert!(
        (slope - omega).abs() <= 1e-6 * omega.abs().max(x / FOUR_PI),
        "d e0 / d lambda = {slope} drifted from omega = {omega} at gamma lambda = {x}"
    );
    Ok(e0)
}

/// Largest attainable frequency, Lambda_0 / (4 pi e); the same for every
/// coupling.
pub fn omega_star(c: &BranchConstants) -> f64 {
    let from_lambda0 = c.lambda0 / (FOUR_PI * std::f64::consts::E);
    let from_n_i = (c.n_const / (FOUR_PI * std::f64::consts::E))
        * (FOUR_PI * (1.0 + c.i_const) / c.n_const).exp();
    assert!(
        (from_lambda0 - from_n_i).abs() <= 1e-3 * from_lambda0,
        "omega_star forms disagree: {from_lambda0} vs {from_n_i}"
    );
    from_lambda0
}

/// Particle number at which the frequency peaks: Lambda_0 / (gamma e).
pub fn lambda_star(gamma: f64, c: &BranchConstants) -> f64 {
    c.lambda0 / (gamma * std::f64::consts::E)
}

/// d omega / d lambda, used to polish roots.
fn omega_slope(lambda: f64, gamma: f64, c: &BranchConstants) -> f64 {
    -(gamma / FOUR_PI) * ((gamma * lambda / c.lambda0).ln() + 1.0)
}

/// Bisect omega(lambda) = target on [lo, hi], then polish with Newton.
/// `rising` says whether omega increases across the interval.
fn solve_monotone(
    target: f64,
    gamma: f64,
    c: &BranchConstants,
    lo: f64,
    hi: f64,
    rising: bool,
) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13 * mid {
            break;
        }
        let val = omega_canonical(gamma * mid, c);
        let go_right = if rising { val < target } else { val > target };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..3 {
        let slope = omega_slope(root, gamma, c);
        if slope == 0.0 {
            break;
        }
        let next = root - (omega_canonical(gamma * root, c) - target) / slope;
        if next.is_finite() && next > lo * 0.5 && next < hi * 2.0 {
            root = next;
        }
    }
    root
}

/// All particle numbers with frequency `omega` at coupling `gamma`, in
/// increasing order. Empty above the peak, one root at the peak or for
/// omega <= 0, two roots between.
pub fn lambdas_of_omega(omega: f64, gamma: f64, c: &BranchConstants) -> Result<Vec<f64>> {
    if !(gamma > 0.0 && gamma.is_finite()) || !omega.is_finite() {
        return Err(Error::BadParams(format!(
            "need finite omega and gamma > 0, got omega = {omega}, gamma = {gamma}"
        )));
    }
    let peak = omega_star(c);
    let ls = lambda_star(gamma, c);
    if omega > peak {
        return Ok(Vec::new());
    }
    if omega == 0.0 {
        return Ok(vec![c.lambda0 / gamma]);
    }
    if omega < 0.0 {
        // Single root beyond Lambda_0 / gamma, where omega falls to -inf.
        let lo = c.lambda0 / gamma;
        let mut hi = 2.0 * lo;
        while omega_canonical(gamma * hi, c) > omega {
            hi *= 2.0;
        }
        return Ok(vec![solve_monotone(omega, gamma, c, lo, hi, false)]);
    }

    // 0 < omega <= peak: the two roots sit at lambda_star -+ delta with
    // delta = sqrt(2 (peak - omega) / |omega''(lambda_star)|) near the peak.
    let curvature = gamma * gamma * std::f64::consts::E / (FOUR_PI * c.lambda0);
    let delta = (2.0 * (peak - omega) / curvature).sqrt();
    if delta < 1e-4 * ls {
        // Bisection brackets collapse at the tangency; expand around the
        // peak instead and polish. At the exact peak both roots coincide.
        if delta == 0.0 {
            return Ok(vec![ls]);
        }
        let polish = |seed: f64| {
            let mut root = seed;
            for _ in 0..3 {
                let slope = omega_slope(root, gamma, c);
                if slope.abs() < 1e-30 {
                    break;
                }
                root -= (omega_canonical(gamma * root, c) - omega) / slope;
            }
            root
        };
        return Ok(vec![polish(ls - delta), polish(ls + delta)]);
    }

    // Left flank rises from 0 toward the peak; halve until below target.
    let mut lo = 0.5 * ls;
    while omega_canonical(gamma * lo, c) > omega {
        lo *= 0.5;
    }
    let left = solve_monotone(omega, gamma, c, lo, ls, true);
    // Right flank falls from the peak through zero at Lambda_0 / gamma.
    let right = solve_monotone(omega, gamma, c, ls, c.lambda0 / gamma, false);
    Ok(vec![left, right])
}

/// One row of a branch sweep.
#[derive(Debug, Clone, Copy, Default)]
pub struct BranchPoint {
    pub gamma: f64,
    pub lambda: f64,
    pub omega: f64,
    pub e0: f64,
}

/// Evaluate the branch formulas on `points` equally spaced particle numbers.
/// `threads` caps the worker fan-out; output order always follows the input
/// grid, so any thread count gives identical results.
pub fn sweep(
    gamma: f64,
    lambda_min: f64,
    lambda_max: f64,
    points: usize,
    threads: usize,
    c: &BranchConstants,
) -> Result<Vec<BranchPoint>> {
    check_positive(lambda_min, gamma)?;
    if !(lambda_max >= lambda_min && lambda_max.is_finite()) {
        return Err(Error::BadParams(format!(
            "need lambda_max >= lambda_min, got {lambda_max} < {lambda_min}"
        )));
    }
    if points < 2 && lambda_max > lambda_min {
        return Err(Error::BadParams(
            "a sweep over a nontrivial range needs at least 2 points".into(),
        ));
    }
    if points == 0 {
        return Err(Error::BadParams("points must be positive".into()));
    }
    let lambdas: Vec<f64> = if points == 1 {
        vec![lambda_min]
    } else {
        (0..points)
            .map(|k| lambda_min + (lambda_max - lambda_min) * k as f64 / (points - 1) as f64)
            .collect()
    };
    let mut out = vec![BranchPoint::default(); points];
    let workers = threads.max(1).min(points);
    let chunk = points.div_ceil(workers);
    std::thread::scope(|scope| {
        for (grid, slots) in lambdas.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (slot, &lambda) in slots.iter_mut().zip(grid) {
                    *slot = BranchPoint {
                        gamma,
                        lambda,
                        omega: omega_of_lambda(lambda, gamma, c)
                            .expect("positive lambda validated above"),
                        e0: e0_of_lambda(lambda, gamma, c)
                            .expect("positive lambda validated above"),
                    };
                }
            });
        }
    });
    Ok(out)
}

/// A physical bound state obtained by rescaling the universal profile.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub profile: RadialProfile,
    pub gamma: f64,
    pub lambda: f64,
    pub omega: f64,
    pub m: u32,
    pub t_value: f64,
    pub v_value: f64,
    /// Total energy T + (gamma / 2) V.
    pub e_value: f64,
}

/// Rescale a universal solution to particle number `lambda` at coupling
/// `gamma`: with E = gamma lambda / N the profile map is
/// u_phys(r) = (E / sqrt(gamma)) u(sqrt(E) r).
///
/// The particle number N used for E is the quadrature value of the stored
/// profile, so the physical state's mass equals `lambda` to rounding; its
/// frequency comes from the branch formula with the far-field constants.
pub fn rescale_to_physical(sol: &UniversalSolution, lambda: f64, gamma: f64) -> Result<BoundState> {
    check_positive(lambda, gamma)?;
    let universal = sol.profile()?;
    let n_quad = particle_number(&universal);
    let e_scale = gamma * lambda / n_quad;
    let stretch = 1.0 / e_scale.sqrt();
    let amp = e_scale / gamma.sqrt();
    let grid: Vec<f64> = universal.grid().iter().map(|r| r * stretch).collect();
    let values: Vec<f64> = universal.values().iter().map(|u| u * amp).collect();
    let profile = RadialProfile::new(grid, values, universal.interp())?;

    let constants = BranchConstants::from_solution(sol)?;
    let omega = omega_of_lambda(lambda, gamma, &constants)?;
    let t_value = kinetic(&profile, sol.m)?;
    let v_value = potential_v(&profile);
    Ok(BoundState {
        profile,
        gamma,
        lambda,
        omega,
        m: sol.m,
        t_value,
        v_value,
        e_value: t_value + 0.5 * gamma * v_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference() -> BranchConstants {
        BranchConstants::reference()
    }

    use crate::test_support::ground;

    #[test]
    fn reference_constants_satisfy_the_defining_relation() {
        let c = reference();
        let rebuilt = BranchConstants::new(c.n_const, c.i_const, c.lambda0, c.source).unwrap();
        assert_eq!(rebuilt.lambda0, 46.03);
        let formula = c.n_const * (FOUR_PI * (1.0 + c.i_const) / c.n_const).exp();
        assert_relative_eq!(formula, 46.03, max_relative = 1e-4);
    }

    #[test]
    fn constants_validation_rejects_inconsistent_lambda0() {
        assert!(BranchConstants::new(10.3135, 0.2276, 50.0, ConstantsSource::Reference).is_err());
        assert!(BranchConstants::new(-1.0, 0.2276, 46.03, ConstantsSource::Reference).is_err());
    }

    #[test]
    fn frequency_at_marked_points() {
        let c = reference();
        assert_eq!(omega_of_lambda(c.lambda0, 1.0, &c).unwrap(), 0.0);
        let peak = omega_of_lambda(c.lambda0 / std::f64::consts::E, 1.0, &c).unwrap();
        assert_relative_eq!(peak, omega_star(&c), max_relative = 1e-12);
        assert_relative_eq!(omega_star(&c), 1.3475, max_relative = 1e-3);
        let past = omega_of_lambda(2.0 * c.lambda0, 1.0, &c).unwrap();
        assert_relative_eq!(past, -5.0777, max_relative = 1e-3);
    }

    #[test]
    fn energy_at_marked_points() {
        let c = reference();
        let at_threshold = e0_of_lambda(c.lambda0, 1.0, &c).unwrap();
        assert_relative_eq!(
            at_threshold,
            c.lambda0 * c.lambda0 / (16.0 * std::f64::consts::PI),
            max_relative = 1e-12
        );
        assert_relative_eq!(at_threshold, 42.15, max_relative = 1e-3);
        // lambda^2 ln lambda vanishes at small mass.
        assert!(e0_of_lambda(1e-8, 1.0, &c).unwrap().abs() < 1e-12);
    }

    #[test]
    fn energy_derivative_matches_frequency() {
        let c = reference();
        for gamma in [0.5, 1.0, 2.0] {
            for lambda in [5.0, 10.0, 20.0, 46.03, 100.0] {
                let h = 1e-5 * lambda;
                let slope = (e0_of_lambda(lambda + h, gamma, &c).unwrap()
                    - e0_of_lambda(lambda - h, gamma, &c).unwrap())
                    / (2.0 * h);
                let omega = omega_of_lambda(lambda, gamma, &c).unwrap();
                let scale = omega.abs().max(gamma * lambda / FOUR_PI);
                assert!(
                    (slope - omega).abs() <= 1e-6 * scale,
                    "de0/dlambda = {slope} vs omega = {omega} at ({lambda}, {gamma})"
                );
            }
        }
    }

    #[test]
    fn inversion_round_trips_through_the_frequency() {
        let c = reference();
        for gamma in [0.1, 1.0, 10.0] {
            for frac in [0.05, 0.2, 0.5, 0.9, 0.999, 1.5, 3.0] {
                let lambda = frac * c.lambda0 / gamma;
                let omega = omega_of_lambda(lambda, gamma, &c).unwrap();
                let roots = lambdas_of_omega(omega, gamma, &c).unwrap();
                let hit = roots.iter().any(|r| ((r - lambda) / lambda).abs() < 1e-8);
                assert!(
                    hit,
                    "roots {roots:?} miss lambda = {lambda} at gamma = {gamma}"
                );
            }
        }
    }

    #[test]
    fn root_counts_by_frequency_regime() {
        let c = reference();
        for gamma in [0.1, 1.0, 10.0] {
            let peak = omega_star(&c);
            let ls = lambda_star(gamma, &c);
            assert!(lambdas_of_omega(2.0, gamma, &c).unwrap().is_empty());
            let at_peak = lambdas_of_omega(peak, gamma, &c).unwrap();
            assert_eq!(at_peak.len(), 1);
            assert_relative_eq!(at_peak[0], ls, max_relative = 1e-9);
            let at_zero = lambdas_of_omega(0.0, gamma, &c).unwrap();
            assert_eq!(at_zero, vec![c.lambda0 / gamma]);
            let two = lambdas_of_omega(1.0, gamma, &c).unwrap();
            assert_eq!(two.len(), 2);
            assert!(two[0] < ls && ls < two[1]);
            let one = lambdas_of_omega(-1.0, gamma, &c).unwrap();
            assert_eq!(one.len(), 1);
            assert!(one[0] > c.lambda0 / gamma);
        }
    }

    #[test]
    fn near_tangency_inversion_stays_accurate() {
        let c = reference();
        let peak = omega_star(&c);
        for eps in [1e-9, 1e-12, 1e-15] {
            let omega = peak * (1.0 - eps);
            let roots = lambdas_of_omega(omega, 1.0, &c).unwrap();
            assert_eq!(roots.len(), 2, "eps = {eps}");
            for root in roots {
                let back = omega_of_lambda(root, 1.0, &c).unwrap();
                assert!(
                    (back - omega).abs() <= 1e-10 * peak,
                    "omega({root}) = {back} vs requested {omega}"
                );
            }
        }
    }

    #[test]
    fn frequency_peak_is_coupling_independent() {
        let c = reference();
        let peak = omega_star(&c);
        for gamma in [0.1, 1.0, 10.0] {
            let ls = lambda_star(gamma, &c);
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0.0;
            for k in 0..20001 {
                let lambda = (0.02 + 2.0 * k as f64 / 20000.0) * c.lambda0 / gamma;
                let omega = omega_of_lambda(lambda, gamma, &c).unwrap();
                if omega > best {
                    best = omega;
                    arg = lambda;
                }
            }
            assert_relative_eq!(best, peak, max_relative = 1e-6);
            assert_relative_eq!(arg, ls, max_relative = 1e-3);
        }
    }

    #[test]
    fn sweep_is_deterministic_across_thread_counts() {
        let c = reference();
        let serial = sweep(1.0, 1.0, 100.0, 257, 1, &c).unwrap();
        let parallel = sweep(1.0, 1.0, 100.0, 257, 4, &c).unwrap();
        assert_eq!(serial.len(), 257);
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a.lambda, b.lambda);
            assert_eq!(a.omega, b.omega);
            assert_eq!(a.e0, b.e0);
        }
        assert_eq!(serial[0].lambda, 1.0);
        assert_eq!(serial[256].lambda, 100.0);
        assert!(serial.windows(2).all(|w| w[0].lambda < w[1].lambda));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        let c = reference();
        assert!(sweep(1.0, 10.0, 5.0, 8, 1, &c).is_err());
        assert!(sweep(1.0, 0.0, 5.0, 8, 1, &c).is_err());
        assert!(sweep(1.0, 1.0, 5.0, 1, 1, &c).is_err());
        assert!(sweep(1.0, 1.0, 5.0, 0, 1, &c).is_err());
    }

    #[test]
    fn constants_from_the_ground_solve_match_the_literature() {
        let c = BranchConstants::from_solution(ground()).unwrap();
        assert_eq!(c.source, ConstantsSource::Computed);
        assert_relative_eq!(c.n_const, 10.3135, max_relative = 1e-4);
        assert_relative_eq!(c.i_const, 0.2276, max_relative = 1e-3);
        assert_relative_eq!(c.lambda0, 46.03, max_relative = 1e-3);
    }

    #[test]
    fn rescaled_state_hits_the_requested_mass_exactly() {
        let sol = ground();
        for (lambda, gamma) in [(46.03, 1.0), (10.0, 0.5), (5.0, 3.0)] {
            let state = rescale_to_physical(sol, lambda, gamma).unwrap();
            assert_relative_eq!(state.profile.lambda(), lambda, max_relative = 1e-12);
            let virial = gamma * lambda * lambda / (8.0 * std::f64::consts::PI);
            assert_relative_eq!(state.t_value, virial, max_relative = 1e-3);
        }
    }

    #[test]
    fn rescaling_to_the_threshold_mass_gives_a_zero_frequency_state() {
        let sol = ground();
        let c = BranchConstants::from_solution(sol).unwrap();
        let state = rescale_to_physical(sol, c.lambda0, 1.0).unwrap();
        assert!(state.omega.abs() < 1e-6 * omega_star(&c));
        let t_expect = c.lambda0 * c.lambda0 / (8.0 * std::f64::consts::PI);
        assert_relative_eq!(state.t_value, t_expect, max_relative = 1e-3);
        let e_expect = e0_of_lambda(c.lambda0, 1.0, &c).unwrap();
        assert_relative_eq!(state.e_value, e_expect, max_relative = 1e-4);
        // At the threshold mass the potential term mirrors the kinetic one.
        assert_relative_eq!(state.v_value, -state.t_value, max_relative = 1e-3);
    }

    #[test]
    fn identity_rescale_returns_the_universal_profile() {
        let sol = ground();
        let universal = sol.profile().unwrap();
        let state = rescale_to_physical(sol, universal.lambda(), 1.0).unwrap();
        for (a, b) in universal.grid().iter().zip(state.profile.grid()) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
        for (a, b) in universal.values().iter().zip(state.profile.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn rescale_rejects_bad_parameters() {
        let sol = ground();
        assert!(rescale_to_physical(sol, -1.0, 1.0).is_err());
        assert!(rescale_to_physical(sol, 1.0, 0.0).is_err());
    }
}

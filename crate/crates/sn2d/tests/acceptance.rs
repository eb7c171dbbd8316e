//! Acceptance gate: one test per shipped guarantee, each printing a
//! [PASS]/[FAIL] line (visible with --nocapture or on failure).

use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sn2d::branch::{lambdas_of_omega, omega_of_lambda, omega_star, BranchConstants};
use sn2d::functionals::{kinetic, log_moment, particle_number, tail_estimates, virial_report};
use sn2d::hls::{builtin_profile, dilation_scan, hls_check, ProfileSpec};
use sn2d::oracle::{gradient_selftest, minimize_energy, GridConfig, OptConfig};
use sn2d::shooting::{solve_universal, ShootingConfig, UniversalSolution};

fn ground() -> &'static UniversalSolution {
    static SOL: OnceLock<UniversalSolution> = OnceLock::new();
    SOL.get_or_init(|| solve_universal(0, &ShootingConfig::default()).expect("ground solve"))
}

fn constants() -> &'static BranchConstants {
    static C: OnceLock<BranchConstants> = OnceLock::new();
    C.get_or_init(|| BranchConstants::from_solution(ground()).expect("constants"))
}

fn gate(criterion: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn ground_particle_number() {
    let start = Instant::now();
    let sol = solve_universal(0, &ShootingConfig::default()).expect("ground solve");
    let elapsed = start.elapsed();
    let n = particle_number(&sol.profile().unwrap());
    gate(
        "ground particle number",
        (n - 10.3135).abs() <= 1e-3 && elapsed.as_secs_f64() < 5.0,
        format!("N = {n:.7} (want 10.3135 +- 1e-3) in {elapsed:.2?} (< 5 s)"),
    );
}

#[test]
fn ground_log_moment_two_routes() {
    let sol = ground();
    let i_quad = log_moment(&sol.profile().unwrap());
    let tail = tail_estimates(sol).unwrap();
    let route_gap = ((tail.i_tail - i_quad) / i_quad).abs();
    gate(
        "ground log moment",
        (i_quad - 0.2276).abs() <= 1e-3 && route_gap <= 1e-4,
        format!("I = {i_quad:.7} (want 0.2276 +- 1e-3), far-field route off by {route_gap:.2e} (<= 1e-4)"),
    );
}

#[test]
fn threshold_coupling() {
    let sol = ground();
    let profile = sol.profile().unwrap();
    let n = particle_number(&profile);
    let i = log_moment(&profile);
    let from_quadrature = n * (4.0 * std::f64::consts::PI * (1.0 + i) / n).exp();
    let lambda0 = constants().lambda0;
    gate(
        "threshold coupling",
        (from_quadrature - 46.03).abs() <= 0.05 && (lambda0 - 46.03).abs() <= 0.05,
        format!("N exp(4 pi (1+I)/N) = {from_quadrature:.5}, computed constants give {lambda0:.5} (want 46.03 +- 0.05)"),
    );
}

#[test]
fn virial_identity() {
    let sol = ground();
    let virial = virial_report(sol).unwrap();
    let t = kinetic(&sol.profile().unwrap(), 0).unwrap();
    let n = particle_number(&sol.profile().unwrap());
    let closed_form = n * n / (8.0 * std::f64::consts::PI);
    let relative = ((t - closed_form) / closed_form).abs();
    gate(
        "virial identity",
        relative <= 1e-3 && virial.virial_residual <= 1e-3,
        format!("T = {t:.7} vs N^2/8pi = {closed_form:.7} (rel {relative:.2e} <= 1e-3), monitor residual {:.2e}", virial.virial_residual),
    );
}

#[test]
fn frequency_structure() {
    let c = constants();
    let peak = omega_star(c);
    let roots_two = lambdas_of_omega(1.0, 1.0, c).unwrap();
    let roots_zero = lambdas_of_omega(0.0, 1.0, c).unwrap();
    let roots_peak = lambdas_of_omega(peak, 1.0, c).unwrap();
    let roots_none = lambdas_of_omega(2.0, 1.0, c).unwrap();
    let zero_root = roots_zero.first().copied().unwrap_or(f64::NAN);

    let mut worst_round_trip: f64 = 0.0;
    for frac in [0.07, 0.2, 0.36787944117144233, 0.9, 0.999, 1.3, 1.9] {
        let lambda = frac * c.lambda0;
        let omega = omega_of_lambda(lambda, 1.0, c).unwrap();
        let best = lambdas_of_omega(omega, 1.0, c)
            .unwrap()
            .iter()
            .map(|r| ((r - lambda) / lambda).abs())
            .fold(f64::INFINITY, f64::min);
        worst_round_trip = worst_round_trip.max(best);
    }

    let pass = (peak - 1.3475).abs() <= 1e-3
        && roots_two.len() == 2
        && roots_zero.len() == 1
        && (zero_root - 46.03).abs() <= 0.05
        && roots_peak.len() == 1
        && roots_none.is_empty()
        && worst_round_trip <= 1e-8;
    gate(
        "frequency structure",
        pass,
        format!(
            "omega* = {peak:.5} (want 1.3475); roots 2/1/1/0 got {}/{}/{}/{} with zero-frequency mass {zero_root:.4}; round trip {worst_round_trip:.2e} (<= 1e-8)",
            roots_two.len(),
            roots_zero.len(),
            roots_peak.len(),
            roots_none.len()
        ),
    );
}

#[test]
fn energy_formula_vs_direct_minimization() {
    let c = constants();
    let mut detail = String::new();
    let mut pass = true;
    for lambda in [c.lambda0 / std::f64::consts::E, c.lambda0, 2.0 * c.lambda0] {
        let formula = sn2d::branch::e0_of_lambda(lambda, 1.0, c).unwrap();
        let start = Instant::now();
        let oracle = minimize_energy(lambda, 1.0, &GridConfig::default(), &OptConfig::default())
            .expect("minimization");
        let elapsed = start.elapsed();
        let relative = ((oracle.energy - formula) / formula).abs();
        pass &= relative <= 1e-2 && elapsed.as_secs_f64() < 30.0;
        detail.push_str(&format!(
            "lambda {lambda:.3}: {:.5} vs {formula:.5} (rel {relative:.1e}, {elapsed:.2?}); ",
            oracle.energy
        ));
    }
    gate(
        "energy formula vs direct minimization",
        pass,
        format!("{detail}all within 1% and 30 s"),
    );
}

#[test]
fn sharp_interaction_bound() {
    // The additive constant in the weak-vs-sharp comparison, evaluated with
    // the literature values of N and I.
    let reference = BranchConstants::reference();
    let gaussian = builtin_profile(&ProfileSpec::Gaussian {
        lambda: 1.0,
        width: 1.0,
    })
    .unwrap();
    let constant_check = hls_check(&gaussian, &reference).unwrap().constant_check;

    // No profile in a 50-member random family may beat the bound.
    let c = constants();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ac);
    let mut min_ratio = f64::INFINITY;
    for k in 0..50 {
        let lambda = rng.gen_range(0.5..50.0);
        let width = rng.gen_range(0.3..3.0);
        let spec = if k % 2 == 0 {
            ProfileSpec::Gaussian { lambda, width }
        } else {
            ProfileSpec::Exponential { lambda, width }
        };
        let report = hls_check(&builtin_profile(&spec).unwrap(), c).unwrap();
        min_ratio = min_ratio.min(report.slack_sharp / (lambda * lambda));
    }

    // The rescaled ground family sits on the bound; scan dilations and take
    // the best.
    let ground_profile = builtin_profile(&ProfileSpec::GroundState {
        lambda: c.lambda0,
        solution: ground(),
    })
    .unwrap();
    let sigmas: Vec<f64> = (0..13).map(|k| 0.4 + 0.1 * k as f64).collect();
    let scan = dilation_scan(&ground_profile, &sigmas, c).unwrap();
    let ground_ratio = scan.report.slack_sharp / (scan.report.lambda * scan.report.lambda);

    let pass = (constant_check + 0.0084).abs() <= 2e-4
        && min_ratio >= -1e-6
        && (-1e-6..=1e-3).contains(&ground_ratio);
    gate(
        "sharp interaction bound",
        pass,
        format!(
            "constant {constant_check:.5} (want -0.0084 +- 2e-4); worst family slack/lambda^2 {min_ratio:.2e} (>= -1e-6); ground slack/lambda^2 {ground_ratio:.2e} (<= 1e-3)"
        ),
    );
}

#[test]
fn angular_excitations() {
    let mut detail = String::new();
    let mut pass = true;
    for m in [1u32, 2] {
        let sol = solve_universal(m, &ShootingConfig::default()).expect("excited solve");
        let profile = sol.profile().unwrap();
        let n_quad = particle_number(&profile);
        let tail = tail_estimates(&sol).unwrap();
        let virial = virial_report(&sol).unwrap();
        let route_gap = ((tail.n_tail - n_quad) / n_quad).abs();

        let mut positive = true;
        let mut decreasing = true;
        let mut prev = f64::INFINITY;
        for k in 0..sol.samples.len() {
            let g = sol.g_at(k);
            positive &= g > 0.0;
            decreasing &= g < prev;
            prev = g;
        }

        pass &= positive && decreasing && virial.virial_residual < 1e-3 && route_gap <= 1e-4;
        detail.push_str(&format!(
            "m={m}: positive {positive}, decreasing {decreasing}, virial {:.1e}, N routes {route_gap:.1e}; ",
            virial.virial_residual
        ));
    }
    gate("angular excitations", pass, detail);
}

#[test]
fn oracle_gradient() {
    let worst = gradient_selftest(&GridConfig::default()).expect("selftest");
    gate(
        "oracle gradient",
        worst <= 1e-5,
        format!("worst relative error {worst:.2e} (<= 1e-5)"),
    );
}

#[test]
fn reproduce_determinism() {
    let exe = env!("CARGO_BIN_EXE_sn2d");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let output = std::process::Command::new(exe)
            .arg("reproduce")
            .arg("--out-dir")
            .arg(dir.path())
            .output()
            .expect("run reproduce");
        assert!(
            output.status.success(),
            "reproduce failed:\n{}",
            String::from_utf8_lossy(&output.stdout)
        );
    }
    let files = [
        "universal_m0.csv",
        "constants.json",
        "branch_sweep.csv",
        "hls_ground.json",
    ];
    let mut identical = true;
    for name in files {
        let a = std::fs::read(dirs[0].path().join(name)).expect("first run output");
        let b = std::fs::read(dirs[1].path().join(name)).expect("second run output");
        identical &= a == b;
    }
    gate(
        "reproduce determinism",
        identical,
        format!("{} data files byte-identical across two runs", files.len()),
    );
}

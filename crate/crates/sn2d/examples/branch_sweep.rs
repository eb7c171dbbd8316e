//! Map the frequency and energy along a physical branch, then invert it.
//!
//! Every bound state with coupling gamma and mass lambda is a rescaled copy
//! of the universal profile, so the whole branch collapses onto closed-form
//! curves omega(lambda) and e0(lambda). This example sweeps them, locates the
//! frequency peak, and recovers masses back from a frequency.
//! Run with `cargo run --release --example branch_sweep`.

use sn2d::branch::{
    lambda_star, lambdas_of_omega, omega_of_lambda, omega_star, sweep, BranchConstants,
};
use sn2d::shooting::{solve_universal, ShootingConfig};

fn main() -> sn2d::Result<()> {
    let sol = solve_universal(0, &ShootingConfig::default())?;
    let constants = BranchConstants::from_solution(&sol)?;
    let gamma = 1.0;

    println!(
        "branch constants: N = {:.6}, I = {:.6}, lambda0 = {:.6}",
        constants.n_const, constants.i_const, constants.lambda0
    );
    println!();

    let points = sweep(gamma, 2.0, 2.0 * constants.lambda0, 13, 4, &constants)?;
    println!("{:>10}  {:>14}  {:>14}", "lambda", "omega", "e0");
    for p in &points {
        println!("{:>10.4}  {:>14.8}  {:>14.6}", p.lambda, p.omega, p.e0);
    }
    println!();

    let peak_omega = omega_star(&constants);
    let peak_lambda = lambda_star(gamma, &constants);
    println!("frequency peak: omega* = {peak_omega:.6} at lambda* = {peak_lambda:.6}");
    println!(
        "zero crossing:  lambda0 / gamma = {:.6}",
        constants.lambda0 / gamma
    );
    println!();

    for omega in [1.0, peak_omega, 0.0, -2.0, 2.0] {
        let roots = lambdas_of_omega(omega, gamma, &constants)?;
        let shown: Vec<String> = roots.iter().map(|r| format!("{r:.6}")).collect();
        println!(
            "omega = {omega:>9.6}  ->  {} mass(es): [{}]",
            roots.len(),
            shown.join(", ")
        );
        for root in roots {
            let back = omega_of_lambda(root, gamma, &constants)?;
            assert!(
                (back - omega).abs() <= 1e-8 * omega.abs().max(1.0),
                "inversion failed to round-trip"
            );
        }
    }
    println!("all roots round-trip through omega(lambda) to 1e-8");
    Ok(())
}

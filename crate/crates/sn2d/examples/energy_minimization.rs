//! Cross-check the branch energy formula against direct minimization.
//!
//! The closed form e0(lambda) = (gamma lambda^2 / 16 pi)(1 - 2 ln(gamma
//! lambda / Lambda_0)) comes out of the scaling analysis of the universal
//! solution. The oracle knows nothing about that: it minimizes the
//! discretized energy at fixed mass by projected gradient descent. The two
//! numbers agreeing at masses below, at, and above the threshold is a
//! genuine two-sided test.
//!
//! Run with: cargo run --release --example energy_minimization

use std::time::Instant;

use sn2d::branch::{e0_of_lambda, BranchConstants};
use sn2d::oracle::{minimize_energy, GridConfig, OptConfig};

fn main() -> sn2d::Result<()> {
    let c = BranchConstants::reference();
    println!(
        "constants: N = {}, I = {}, Lambda_0 = {}",
        c.n_const, c.i_const, c.lambda0
    );
    println!();
    println!(
        "{:>12} {:>14} {:>14} {:>10} {:>8} {:>8}",
        "lambda", "formula", "oracle", "rel err", "iters", "time"
    );

    for (label, lambda) in [
        ("Lambda_0/e", c.lambda0 / std::f64::consts::E),
        ("Lambda_0", c.lambda0),
        ("2 Lambda_0", 2.0 * c.lambda0),
    ] {
        let want = e0_of_lambda(lambda, 1.0, &c)?;
        let start = Instant::now();
        let result = minimize_energy(lambda, 1.0, &GridConfig::default(), &OptConfig::default())?;
        let secs = start.elapsed().as_secs_f64();
        let rel = ((result.energy - want) / want).abs();
        println!(
            "{label:>12} {want:>14.6} {:>14.6} {rel:>10.2e} {:>8} {secs:>7.2}s",
            result.energy, result.iterations
        );
        if !result.converged {
            println!(
                "{label:>12} did not reach the gradient tolerance (grad_norm = {:.2e})",
                result.grad_norm
            );
        }
    }
    Ok(())
}

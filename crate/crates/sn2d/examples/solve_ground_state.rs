//! Solve the universal ground state and print its invariants.
//!
//! The positive decaying solution of the radial system is found by bisecting
//! on the central amplitude. Its particle number N and log moment I are then
//! computed twice, by quadrature on the profile and from the far-field
//! behaviour of the induced potential, and combined into the threshold
//! coupling Lambda_0 = N exp(4 pi (1 + I) / N).
//!
//! Run with: cargo run --release --example solve_ground_state

use sn2d::functionals::{self, particle_number};
use sn2d::shooting::{solve_universal, validate_solution, ShootingConfig};

fn main() -> sn2d::Result<()> {
    let config = ShootingConfig::default();
    let sol = solve_universal(0, &config)?;

    println!("universal ground state (m = 0)");
    println!("  central amplitude alpha = {:.12}", sol.alpha);
    println!("  bisection width         = {:.3e}", sol.bisection_width);
    println!("  samples                 = {}", sol.samples.len());
    println!("  radius used             = {:.6}", sol.r_max_used);

    let report = validate_solution(&sol)?;
    println!("\nvalidation");
    println!("  positive profile        = {}", report.positivity);
    println!("  monotone decreasing     = {}", report.monotone);
    println!("  exponential tail        = {}", report.tail_decay);
    println!(
        "  poisson residual        = {:.3e}",
        report.poisson_residual
    );

    let profile = sol.profile()?;
    let n_quad = particle_number(&profile);
    let i_quad = functionals::log_moment(&profile);
    let tail = functionals::tail_estimates(&sol)?;
    println!("\ninvariants (quadrature vs far field)");
    println!("  N  = {:.8}  vs  {:.8}", n_quad, tail.n_tail);
    println!("  I  = {:.8}  vs  {:.8}", i_quad, tail.i_tail);

    let virial = functionals::virial_report(&sol)?;
    println!("\nscaling identity T = N^2 / (8 pi)");
    println!("  T                       = {:.8}", virial.t_value);
    println!("  N^2 / (8 pi)            = {:.8}", {
        virial.n_value * virial.n_value / (8.0 * std::f64::consts::PI)
    });
    println!("  relative residual       = {:.3e}", virial.virial_residual);

    let n = tail.n_tail;
    let i = tail.i_tail;
    let lambda0 = n * (4.0 * std::f64::consts::PI * (1.0 + i) / n).exp();
    println!("\nthreshold coupling");
    println!("  Lambda_0 = N exp(4 pi (1 + I) / N) = {:.6}", lambda0);
    Ok(())
}

//! Solve the first two angular modes and check their shape invariants.
//!
//! For angular index m the profile is u = r^m g(r) with g positive and
//! strictly decreasing. Run with `cargo run --release --example angular_modes`.

use sn2d::functionals::{log_moment, particle_number, tail_estimates, virial_report};
use sn2d::shooting::{solve_universal, ShootingConfig};

fn main() -> sn2d::Result<()> {
    for m in [1u32, 2] {
        let start = std::time::Instant::now();
        let sol = solve_universal(m, &ShootingConfig::default())?;
        let elapsed = start.elapsed();

        let profile = sol.profile()?;
        let n_quad = particle_number(&profile);
        let i_quad = log_moment(&profile);
        let tail = tail_estimates(&sol)?;
        let virial = virial_report(&sol)?;

        let mut positive = true;
        let mut decreasing = true;
        let mut prev = f64::INFINITY;
        for k in 0..sol.samples.len() {
            let g = sol.g_at(k);
            positive &= g > 0.0;
            decreasing &= g < prev;
            prev = g;
        }

        println!("mode m = {m}  ({elapsed:.2?})");
        println!("  amplitude            {:.12}", sol.alpha);
        println!(
            "  particle number      {n_quad:.8}  (far field {:.8})",
            tail.n_tail
        );
        println!(
            "  dual-route agreement {:.3e}",
            ((tail.n_tail - n_quad) / n_quad).abs()
        );
        println!(
            "  log moment           {i_quad:.8}  (far field {:.8})",
            tail.i_tail
        );
        println!("  virial residual      {:.3e}", virial.virial_residual);
        println!("  g positive           {positive}");
        println!("  g strictly falling   {decreasing}");
        println!(
            "  radius / samples     {:.4} / {}",
            sol.r_max_used,
            sol.samples.len()
        );
        println!();
    }
    Ok(())
}

//! Bound states of the planar Schrodinger-Newton system.
//!
//! The crate computes radial bound states of a 2D quantum particle coupled
//! to its own logarithmic Newtonian potential. Every solution is a rescaled
//! copy of one universal profile per angular index, so the work splits into
//! a shooting solve on the universal system ([`shooting`], [`ode`]), scaling
//! maps to physical branches ([`branch`]), quadrature of the energy pieces
//! ([`functionals`]), the sharp interaction inequality those profiles
//! saturate ([`hls`]), and an independent direct minimizer used to
//! cross-check everything ([`oracle`]). The [`cli`] module wraps it all in
//! the `sn2d` binary.
//!
//! Guided tours live under `examples/`:
//!
//! * `cargo run --release --example solve_ground_state` - the m = 0 solve
//!   and its invariants.
//! * `cargo run --release --example angular_modes` - excited modes m = 1, 2.
//! * `cargo run --release --example branch_sweep` - frequency/energy curves
//!   and their inversion.
//! * `cargo run --release --example hls_slack` - the sharp bound across
//!   profile families.
//! * `cargo run --release --example energy_minimization` - gradient descent
//!   against the closed-form ground energy.

pub mod branch;
pub mod cli;
pub mod error;
pub mod functionals;
pub mod hls;
pub mod ode;
pub mod oracle;
pub mod shooting;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod test_support {
    use crate::shooting::{solve_universal, ShootingConfig, UniversalSolution};
    use std::sync::OnceLock;

    /// One shared full-accuracy ground solve for all test modules.
    pub fn ground() -> &'static UniversalSolution {
        static SOL: OnceLock<UniversalSolution> = OnceLock::new();
        SOL.get_or_init(|| solve_universal(0, &ShootingConfig::default()).unwrap())
    }
}

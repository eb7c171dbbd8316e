use thiserror::Error;

/// Crate-wide error type. Numerical routines return these instead of
/// panicking so the CLI can map every failure to a stable exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Integration reached `r_max` without the trajectory crossing zero,
    /// blowing up, or decaying.
    #[error("no terminal event before r_max = {r_max}")]
    NoEvent { r_max: f64 },

    /// The adaptive step size collapsed below the resolvable scale.
    #[error("step size underflow near r = {r}")]
    StepUnderflow { r: f64 },

    /// Bracket expansion exhausted without finding two trajectory classes.
    #[error("no sign-changing amplitude bracket in [{alpha_lo}, {alpha_hi}] after {doublings} doublings")]
    BracketFailed {
        alpha_lo: f64,
        alpha_hi: f64,
        doublings: u32,
    },

    /// Profile has too few samples to interpolate or integrate.
    #[error("profile needs at least {min} samples, got {got}")]
    EmptyProfile { min: usize, got: usize },

    /// The m^2 u^2 / r^2 term diverges at the origin for this profile.
    #[error("centrifugal term diverges at r = 0 (m = {m}, u(0) = {u0})")]
    CentrifugalDivergence { m: u32, u0: f64 },

    /// Tail formulas need the trajectory to reach the region W > 1.
    #[error("grid ends at W = {w_end} <= 1; tail formulas need W > 1")]
    InsufficientRange { w_end: f64 },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("parse error in {path} line {line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Numerical and exact machinery for false theta functions.
//!
//! The crate is organized around five subsystems:
//!
//! - [`numeric`]: precision-controlled complex arithmetic, the complex error
//!   function, I-Bessel functions, and tanh-sinh / half-line quadrature.
//! - [`qseries`]: exact integer q-series arithmetic giving ground-truth
//!   coefficients for the eta quotients `f`, `g` and the unimodal counts `u(n)`.
//! - [`modular`]: exact SL2(Z) arithmetic, Dedekind sums, the eta multiplier
//!   system, and the Kloosterman-type sums built from it.
//! - [`theta`]: evaluators for false theta functions, their two-variable
//!   modular completions, lattice theta series, Eichler-type integrals, and
//!   residual checks for every transformation law they satisfy.
//! - [`rademacher`]: the convergent exact formula for `u(n)` as a Bessel /
//!   Kloosterman series with a cot-kernel integral, and the Auluck main term.

pub mod modular;
pub mod numeric;
pub mod qseries;
pub mod rademacher;
pub mod theta;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument outside supported range: {0}")]
    Range(String),
    #[error("quadrature failed to converge: {0}")]
    NonConvergence(String),
    #[error("series tail bound unachievable within term budget: {0}")]
    TailBound(String),
    #[error("integration path collides with a branch cut: {0}")]
    BranchCut(String),
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

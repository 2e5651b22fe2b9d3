//! Fractional relaxation in double precision, without `std`.
//!
//! The solution Ψ_α(t) = E_α(−t^α) of the Caputo problem
//! D^α Ψ = −Ψ, Ψ(0) = 1 (0 < α ≤ 1) is computed three ways:
//!
//! * directly from the Mittag-Leffler function ([`mittag_leffler`],
//!   [`relaxation`]);
//! * by time-stepping the fractional equation itself ([`fde`]);
//! * by integrating the first-order equation Ψ′ = −r_α(t) Ψ whose
//!   coefficient r_α = −Ψ′/Ψ varies in time ([`equivalence`]).
//!
//! Agreement between the routes, the Laplace-transform identity
//! ([`laplace`]) and the discrete residual of the Caputo equation
//! ([`caputo`]) are the verification tools.
//!
//! Everything here allocates through `alloc` only; file formats and the
//! command line live in the companion `fracrelax` crate.

#![no_std]
// Tabulated coefficients keep every printed digit; `!(x > a)` guards are
// written that way so that NaN is rejected too.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod caputo;
pub mod equivalence;
pub mod error;
pub mod fde;
pub mod gamma;
pub mod grid;
pub mod laplace;
pub mod mittag_leffler;
pub mod numeric;
pub mod quad;
pub mod relaxation;
pub mod trajectory;

pub use error::{Error, Result};
pub use grid::{GridKind, TimeGrid};
pub use mittag_leffler::{ml_eval, EvalResult, EvalWarning, MlParams, Regime, SolverConfig};
pub use relaxation::{big_r, phi, psi, relax_coeff};
pub use trajectory::{Provenance, RelaxationTrajectory};

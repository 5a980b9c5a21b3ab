//! Numerical laboratory for the focusing inhomogeneous nonlinear Schrödinger
//! equation `i u_t + Δu + |x|^{-b} |u|^{p-1} u = 0` restricted to radial data
//! in real dimension N > 2.
//!
//! The crate computes ground states of the stationary equation
//! `Δφ - φ + r^{-b} φ^p = 0` by two independent routes, evolves the flow with a
//! mass-conserving split-step scheme, evaluates the conserved quantities,
//! virial/Morawetz functionals, localized masses and radial inequalities along
//! trajectories, and classifies runs as scattering-consistent or blowing up
//! against the mass-energy threshold set by the ground state.

pub mod classify;
pub mod diagnostics;
pub mod error;
pub mod evolve;
pub mod exponents;
pub mod grid;
pub mod groundstate;
pub mod report;
mod tridiag;

pub use error::{CoreError, Result};

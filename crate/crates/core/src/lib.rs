//! Phase-space dynamics of a spin-s "nonlinear top" (two coupled qubits and
//! beyond): SU(2) coherent states, Husimi Q-functions on spherical quadrature
//! grids, exact quantum and classical Liouville evolution, coherent-state
//! propagators, collective dephasing, and an NMR-style two-qubit gate layer.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes through
//! `libm`. IO, file formats and the command-line front end live in the
//! companion `spintop` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classical;
pub mod decoherence;
mod error;
mod fmath;
pub mod grid;
pub mod linalg;
pub mod nmr;
pub mod phase;
pub mod propagators;
pub mod qfunc;
pub mod quantum;
pub mod spin;

pub use error::Error;
pub use grid::QGrid;
pub use linalg::{CMat, C64};
pub use phase::PhasePoint;
pub use quantum::TopParams;
pub use spin::{DensityOperator, PureState, SpinQuantum};

/// Tolerance for closed-form identities (overlaps, unitarity, phases).
pub const TOL_CLOSED_FORM: f64 = 1e-12;
/// Tolerance for quadrature-backed identities (grid integrals, moments).
pub const TOL_QUADRATURE: f64 = 1e-9;
/// Slack allowed below zero for eigenvalues of physical states.
pub const TOL_EIGENVALUE: f64 = 1e-10;

//! Tomographic probability representation of multi-qubit states.
//!
//! The crate evaluates spin tomograms (joint probabilities of spin-projection
//! outcomes along chosen axes), compresses them with qubit portraits
//! (column-stochastic maps onto two bins), and tests separability with the
//! CHSH inequality. A partial-transpose witness is provided as an independent
//! cross-check. The worked example throughout is the four-qubit Smolin state,
//! which is separable across every 2:2 cut but entangled across every 1:3 cut.
//!
//! Conventions shared by every module:
//!
//! * Qubit `0` (called `A`) is the most significant bit of a basis index.
//! * Outcome vectors are ordered lexicographically with `+1/2` before `-1/2`
//!   and qubit `A` varying slowest, so two qubits read `(++, +-, -+, --)`.
//! * A spin-projection measurement along a unit vector `n` is the projector
//!   `(I + 2m n·σ) / 2`, equivalently `u |m⟩⟨m| u†` with `u σ_z u† = n·σ`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bell;
mod error;
pub mod linalg;
pub mod portrait;
pub mod ppt;
pub mod rng;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use linalg::{Direction, EulerAngles, Operator, C64};

/// Entrywise Hermiticity tolerance for operators treated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Normalization tolerance for traces and probability vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Allowed deviation of `|n|²` from one for a [`Direction`].
pub const UNIT_TOL: f64 = 1e-12;

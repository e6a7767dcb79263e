//! Single-auxiliary purification-based quantum error correction.
//!
//! A code Hamiltonian splits the Hilbert space into degenerate energy
//! subspaces. Noise pushes a logical state out of the ground subspace; an
//! engineered system-auxiliary coupling then transfers each excitation onto a
//! distinct auxiliary level. Measuring the auxiliary and keeping any excited
//! outcome returns the system to the original logical state.

pub mod analytic;
pub mod cli;
pub mod codes;
pub mod error;
pub mod lindblad;
pub mod noise;
pub mod protocol;
pub mod qmat;
pub mod tolerance;

pub use error::{Error, Result};

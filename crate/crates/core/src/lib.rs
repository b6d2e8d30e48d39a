//! Bounded-photon ("dark") eigenstates of the two-qubit quantum Rabi model
//!
//! ```text
//! H = ω a†a + g₁ σ₁ₓ (a + a†) + g₂ σ₂ₓ (a + a†) + Δ₁ σ₁z + Δ₂ σ₂z
//! ```
//!
//! The crate derives the exact secular polynomials that decide when an
//! eigenstate with at most `N` photons and energy `Nω` exists, solves them
//! for the coupling, reconstructs the states, and checks the results
//! against converged numerical spectra of the truncated Hamiltonian.
//!
//! Modules:
//! - [`fock`]: truncated Hamiltonian, parity blocks, basis bookkeeping.
//! - [`poly`]: exact polynomial arithmetic and determinants.
//! - [`darkstate`]: secular matrices, existence conditions, dark states.
//! - [`spectrum`]: converged spectra over coupling grids, gaps, populations.
//! - [`asymptotic`]: large-coupling solutions for odd `N ≥ 5`.

pub mod asymptotic;
pub mod darkstate;
pub mod error;
pub mod exec;
pub mod fock;
pub mod linalg;
pub mod output;
pub mod poly;
pub mod roots;
pub mod spectrum;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fock::{BasisState, ModelParams, Parity, ParityBlock, QubitPair, Spin};

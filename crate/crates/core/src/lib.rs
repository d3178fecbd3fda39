//! Dark and semi-dark states of N identical d-level systems.
//!
//! A state is *dark* when `U^{⊗N} |ψ> = |ψ>` (up to a global phase) for every
//! single-site unitary `U`, and *semi-dark* when this only holds for the
//! spin-(d-1)/2 image of SU(2). The crate builds the known explicit examples,
//! finds the dark and semi-dark subspaces as joint null spaces of collective
//! ladder operators, certifies candidates by random sampling, and simulates a
//! logical qubit stored in the four-qubit dark subspace under collective noise.

pub mod construction;
pub mod dfs;
pub mod error;
pub mod hilbert;
pub mod numkernel;
pub mod operators;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use hilbert::{BasisState, DensityMatrix, Label, StateVector};
pub use numkernel::{seeded_rng, ComplexMatrix, ComplexVector, SeededRng, C64};

//! Hilbert-style proof kernel for CPC, IPC and HC.
//!
//! [`check_proof`] is the only trusted function. Builders, the Galois
//! transformations and the derived-theorem library produce [`Proof`] values
//! that are re-checked like any user input.

mod axioms;
mod builder;
mod check;
mod derived;
mod galois;
mod proof;

pub use axioms::{axiom_schemes, scheme, AxiomScheme, System};
pub use builder::{BuildError, ProofBuilder};
pub use check::{check_proof, CheckError, CheckReport};
pub use derived::{derived_theorem, DerivedTag};
pub use galois::{galois_backward, galois_forward, GaloisError};
pub use proof::{Justification, Proof, ProofFormatError, Step};

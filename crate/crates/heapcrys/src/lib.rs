//! Minuscule heaps and their crystals, two ways.
//!
//! This crate builds, cross-checks, and exports two models of the crystal
//! `B_w(nλ)` attached to a dominant minuscule Weyl group element `w`:
//!
//! * the combinatorial model: height-`n` reverse plane partitions on the heap
//!   `H(w)`, with crystal operators given by the signature rule on increasing
//!   chains of order ideals ([`crystal`], [`heap`]);
//! * the module-theoretic model: submodules of `ℂH(w)^{⊕n}` over the
//!   preprojective algebra of the underlying simply-laced quiver, read off
//!   through Jordan types of runner shift operators ([`preproj`],
//!   [`grassmannian`]).
//!
//! Everything is exact: weights and roots are integer vectors, module linear
//! algebra runs over arbitrary-precision rationals. The [`suite`] module wires
//! the cross-checks into a reproducible verification suite.

pub mod crystal;
pub mod dynkin;
pub mod grassmannian;
pub mod heap;
pub mod preproj;
pub mod ratmat;
pub mod report;
pub mod suite;
pub mod tableaux;
pub mod toggles;
pub mod weyl;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("invalid word: {0}")]
    Word(String),
    #[error("invalid heap: {0}")]
    Heap(String),
    #[error("invalid crystal input: {0}")]
    Crystal(String),
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error("enumeration bound exceeded: {0}")]
    Bounds(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Quasitriangular structures on group algebras of small finite groups.
//!
//! Every universal R-matrix on `k[G]` comes from a pair of normal inclusions
//! `i, j: A → G` of a finite abelian group inducing the same `G`-action on `A`
//! together with a nondegenerate `G`-invariant bimultiplicative form `β` on
//! the dual group `Â`:
//!
//! ```text
//! R = 1/|A|² Σ_{a,b ∈ A} Σ_{χ,ξ ∈ Â} β(χ,ξ) χ(a) ξ(b) i(a) ⊗ j(b)
//! ```
//!
//! This crate builds those R-matrices in exact cyclotomic arithmetic, checks
//! every quasitriangularity identity on them, extracts their Markov elements
//! and minimal supports, builds the twist to super vector spaces, and computes
//! the twisted λ-ring structure (`ψ^k_u(χ)(g) = χ(u^{k+1} g^k)`) that a
//! triangular structure induces on the character ring.

pub mod acceptance;
pub mod catalog;
pub mod charring;
pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod hopf;
pub mod interchange;
pub mod linalg;
pub mod rmatrix;

pub use cyclotomic::CycScalar;
pub use error::{Error, Result};
pub use groups::{AbelianGroup, BiForm, Character, FiniteGroup, Inclusion};
pub use hopf::GATensor;

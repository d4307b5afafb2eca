//! Operators that factor as a product of two orthogonal projections.
//!
//! The crate provides:
//!
//! - a finite-dimensional complex Hilbert-space substrate (matrices,
//!   subspaces, and the subspace lattice) in [`matrix`] and [`subspace`];
//! - classification of products of two projections, canonical
//!   factorizations, and the unitary/completely-non-unitary decomposition
//!   in [`products`];
//! - the alternating-projection iteration, its limit projector, and decay
//!   of the non-unitary block in [`alternating`];
//! - finite Blaschke products and a truncated Hardy-space layer (inner and
//!   model projections, lcm/gcd, inner-function recovery) in [`blaschke`]
//!   and [`hardy`];
//! - seeded randomized/exhaustive verification suites in [`suites`].
//!
//! All operations are pure functions over immutable values. With the default
//! `parallel` feature the suites fan trials out over a rayon pool; per-trial
//! RNG streams are derived from the root seed by trial index, so reports are
//! byte-identical regardless of thread count (or of disabling the feature).

pub mod alternating;
pub mod blaschke;
pub mod hardy;
pub mod matrix;
pub mod products;
pub mod random;
pub mod subspace;
pub mod suites;

pub use matrix::{Complex64, ComplexMatrix, MatrixJson};
pub use subspace::{Subspace, SubspaceJson, Tolerances};

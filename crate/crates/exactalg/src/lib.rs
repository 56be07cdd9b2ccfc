//! Exact integer and `Z/m` linear algebra.
//!
//! Everything here is exact: matrices carry arbitrary-precision integers,
//! Smith normal form comes with unimodular transforms, and cohomology of
//! cochain complexes is returned as finitely generated abelian groups in
//! invariant-factor normal form together with representative cocycles.
//!
//! The mod-p code path (`modp`) is kept separate from the integer code on
//! purpose: bar resolutions for groups of order 48 produce matrices with
//! 10^5..10^6 columns whose ranks are only reachable by sparse elimination
//! over a small field.

pub mod complex;
pub mod error;
pub mod fgab;
pub mod matrix;
pub mod modp;
pub mod snf;
pub mod sparse;
pub mod zn;

pub use complex::{cohomology_at, cohomology_presented, CochainComplex};
pub use error::ExactError;
pub use fgab::{subquotient, FgAbGroup, Presentation};
pub use matrix::IntMatrix;
pub use modp::{modp_rank, BitMatrix};
pub use snf::{snf, Snf};
pub use sparse::SparseIntMatrix;

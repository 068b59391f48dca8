//! Skeletal unitary modular tensor categories and Q-systems inside them.
//!
//! Objects are multiplicity vectors over the simple objects and morphisms are
//! families of dense complex blocks, one per simple, written in left-nested
//! fusion-tree bases. On top of that calculus the crate builds Longo-Rehren,
//! product, direct-sum and sub-Q-systems, left/right and full centers, the
//! functor `T`, equivalence tests and an exhaustive search for modular
//! invariants.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod linalg;

pub mod classify;
pub mod fusion;
pub mod homcalc;
pub mod mtc;
pub mod qsystem;

pub use error::Error;
pub use num_complex::Complex64 as C64;

pub type CMat = nalgebra::DMatrix<C64>;

/// Default tolerance for predicate checks.
pub const TOL: f64 = 1e-9;
/// Guard band used when rounding to integers.
pub const ROUND_TOL: f64 = 1e-6;

pub type Result<T, E = Error> = core::result::Result<T, E>;

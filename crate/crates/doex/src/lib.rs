//! Exact computer algebra for graded double Ore extensions of the quantum
//! and Jordan planes: relation synthesis from coefficient data, the System C
//! constraint checks, degree-bounded noncommutative Groebner bases, Hilbert
//! and Koszul diagnostics, the 26-family catalog, and a finite-field
//! enumerator for the constraint system.

pub mod catalog;
pub mod dext;
pub mod diagnostics;
pub mod enumerate;
pub mod freealg;
pub mod linalg;
pub mod ncgb;
pub mod scalar;

/// Default completion degree bound used by the CLI and the test suites.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

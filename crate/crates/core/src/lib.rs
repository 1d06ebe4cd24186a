//! Exact computations on symmetric determinantal surfaces in projective
//! 3-space: sparse polynomials, Groebner bases, node counting, degree-type
//! enumeration and Hilbert-function cohomology checks.

pub mod cohomology;
pub mod enumerator;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod nodes;
pub mod poly;
pub mod rng;
pub mod symmat;

pub use error::{Error, Result};

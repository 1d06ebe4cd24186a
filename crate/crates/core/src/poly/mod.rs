//! Exact scalars and sparse multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod polynomial;

pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use monomial::{monomials_of_degree, monomials_up_to_degree, Monomial, TermOrder, MAX_VARS};
pub use parse::parse_poly;
pub use polynomial::{linear_form, Polynomial, Ring};

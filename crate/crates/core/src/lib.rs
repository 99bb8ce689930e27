//! Exact computation in the Lie superalgebra `cvect(0|3)_*` of polynomial vector
//! fields on the `(4|3)`-dimensional superspace.
//!
//! The crate is layered bottom-up:
//!
//! * [`superpoly`]: supercommutative polynomials with exact rational coefficients.
//! * [`superfield`]: vector superfields, their action, commutator and divergence.
//! * [`linalg`]: sparse exact row reduction used by every span computation.
//! * [`buttin`]: Leitesian fields, the Buttin bracket and the odd Laplacian.
//! * [`prolong`]: a generic Cartan prolongation engine.
//! * [`exceptional`]: the embeddings, glued pairs and bracket tables of `cvect(0|3)_*`.
//! * [`text`]: the expression grammar and canonical printer.
//! * [`verify`]: the identity suite shared by the `selftest` command and the tests.

pub mod buttin;
pub mod error;
pub mod exceptional;
pub mod linalg;
pub mod prolong;
pub mod random;
pub mod superfield;
pub mod superpoly;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use superfield::SuperField;
pub use superpoly::{Chart, Monomial, Parity, SuperPolynomial, Var};

/// Exact coefficient type used throughout.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

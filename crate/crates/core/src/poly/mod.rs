//! Exact polynomial arithmetic over ℚ.

mod monomial;
mod order;
pub mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::ParseError;
pub use polynomial::Polynomial;
pub use ring::{ArithOp, CoordinateRing, RingMap};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

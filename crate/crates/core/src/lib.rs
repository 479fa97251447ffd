//! Finitely presented modules, linear fiber spaces and blow-ups over exact rational
//! polynomial rings.
//!
//! The crate is layered: [`poly`] (arithmetic), [`groebner`] (ideal calculus),
//! [`modules`] (presentations, torsion, resolutions), [`linspace`] (linear fiber spaces)
//! and [`modification`] (blow-ups and finite maps).

pub mod error;
pub mod fault;
pub mod groebner;
pub mod linalg;
pub mod linspace;
pub mod modification;
pub mod modules;
pub mod poly;

pub use error::{Error, Result};
pub use groebner::{DimensionInfo, Ideal};
pub use modules::Presentation;
pub use poly::{CoordinateRing, MonomialOrder, Polynomial, Rational, RingMap};

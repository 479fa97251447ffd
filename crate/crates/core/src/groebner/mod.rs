//! Groebner bases and the ideal calculus built on them.

pub(crate) mod engine;
mod ideal;
mod submodule;

pub use ideal::{krull_dimension, DimensionInfo, Ideal};
pub use submodule::{eliminate_module, syzygy_vectors, Submodule};
pub(crate) use submodule::unit_vector;

use crate::error::Result;
use crate::poly::{MonomialOrder, Polynomial};

/// The binary operations of [`ideal_ops`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
    Quotient,
}

/// Reduced Groebner basis of `I` (together with the ring relations) under `order`.
pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Vec<Polynomial> {
    ideal.gb_in(order)
}

pub fn membership(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}

pub fn ideal_ops(i: &Ideal, j: &Ideal, op: IdealOp) -> Ideal {
    match op {
        IdealOp::Sum => i.sum(j),
        IdealOp::Product => i.product(j),
        IdealOp::Intersect => i.intersect(j),
        IdealOp::Quotient => i.quotient(j),
    }
}

/// `(I : f^∞)` and the least exponent reaching it.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<(Ideal, u32)> {
    ideal.saturate(f)
}

pub fn eliminate(ideal: &Ideal, drop: &[usize]) -> Ideal {
    ideal.eliminate(drop)
}

pub fn dimension(ideal: &Ideal) -> DimensionInfo {
    ideal.dimension()
}

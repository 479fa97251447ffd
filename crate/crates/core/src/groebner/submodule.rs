use std::sync::OnceLock;

use super::engine::{self, ModuleOrder, Vector};
use super::ideal::mask;
use crate::error::{Error, Result};
use crate::poly::{CoordinateRing, MonomialOrder, Polynomial};

/// A submodule of the free module `R^rank`, given by generating vectors.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: CoordinateRing,
    rank: usize,
    generators: Vec<Vec<Polynomial>>,
    gb: OnceLock<Vec<Vector>>,
}

/// `rel · e_j` for every relation and position, so the module lives over `R/(relations)`.
fn relation_vectors(ring: &CoordinateRing, rank: usize, offset: usize, order: &ModuleOrder) -> Vec<Vector> {
    let mut out = Vec::new();
    for j in 0..rank {
        for r in ring.relation_basis() {
            out.push(Vector::from_polys(std::slice::from_ref(r), offset + j, order));
        }
    }
    out
}

impl Submodule {
    pub fn new(ring: &CoordinateRing, rank: usize, generators: Vec<Vec<Polynomial>>) -> Result<Self> {
        for v in &generators {
            if v.len() != rank {
                return Err(Error::VariableCount { expected: rank, found: v.len() });
            }
            for p in v {
                ring.check(p)?;
            }
        }
        let generators = generators
            .into_iter()
            .map(|v| v.iter().map(|p| ring.reduce(p)).collect::<Vec<_>>())
            .filter(|v| v.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(Submodule { ring: ring.clone(), rank, generators, gb: OnceLock::new() })
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    fn order(&self) -> ModuleOrder {
        ModuleOrder::top(self.ring.order().clone())
    }

    fn basis(&self) -> &[Vector] {
        self.gb.get_or_init(|| {
            let order = self.order();
            let mut gens: Vec<Vector> = self.generators.iter().map(|v| Vector::from_polys(v, 0, &order)).collect();
            gens.extend(relation_vectors(&self.ring, self.rank, 0, &order));
            engine::groebner(gens, &order, self.rank == 1)
        })
    }

    /// Canonical representative of `v` modulo the submodule.
    pub fn normal_form(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let order = self.order();
        let nf = engine::normal_form(&Vector::from_polys(v, 0, &order), self.basis(), &order);
        nf.to_polys(self.rank, self.ring.nvars())
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        v.len() == self.rank && self.normal_form(v).iter().all(|p| p.is_zero())
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|j| self.contains(&unit_vector(&self.ring, self.rank, j)))
    }

    /// `(self : f^∞) = {v : f^k v ∈ self for some k}`, via `self + (1 − f·u)·R^rank` with
    /// `u` eliminated under a term-over-position order.
    pub fn saturate(&self, f: &Polynomial) -> Result<Submodule> {
        self.ring.check(f)?;
        let f = self.ring.reduce(f);
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let order = ModuleOrder::top(MonomialOrder::eliminating(&mask(n + 1, &[n])));
        let lift = |v: &Vec<Polynomial>| v.iter().map(|p| p.extend(1)).collect::<Vec<_>>();
        let mut gens: Vec<Vector> = self.generators.iter().map(|v| Vector::from_polys(&lift(v), 0, &order)).collect();
        let u = Polynomial::var(n + 1, n);
        let h = &Polynomial::one(n + 1) - &(&f.extend(1) * &u);
        for j in 0..self.rank {
            gens.push(Vector::from_polys(std::slice::from_ref(&h), j, &order));
            for r in self.ring.relation_basis() {
                gens.push(Vector::from_polys(std::slice::from_ref(&r.extend(1)), j, &order));
            }
        }
        let kept: Vec<usize> = (0..n).collect();
        let out = engine::groebner(gens, &order, false)
            .into_iter()
            .map(|v| v.to_polys(self.rank, n + 1))
            .filter_map(|v| v.iter().map(|p| p.restrict(&kept)).collect::<Option<Vec<_>>>())
            .collect();
        Submodule::new(&self.ring, self.rank, out)
    }
}

/// `N ∩ ℚ[kept variables]^rank` for `N ⊆ ℚ[x_1..x_n]^rank` generated by `gens`: a
/// term-over-position basis under an order eliminating `drop`, filtered to vectors free
/// of the dropped variables.
pub fn eliminate_module(nvars: usize, rank: usize, gens: &[Vec<Polynomial>], drop: &[usize]) -> Vec<Vec<Polynomial>> {
    let order = ModuleOrder::top(MonomialOrder::eliminating(&mask(nvars, drop)));
    let vectors: Vec<Vector> = gens.iter().map(|v| Vector::from_polys(v, 0, &order)).collect();
    engine::groebner(vectors, &order, false)
        .into_iter()
        .map(|v| v.to_polys(rank, nvars))
        .filter(|v| v.iter().all(|p| drop.iter().all(|&d| !p.uses_variable(d))))
        .collect()
}

pub(crate) fn unit_vector(ring: &CoordinateRing, rank: usize, j: usize) -> Vec<Polynomial> {
    (0..rank).map(|i| if i == j { ring.one() } else { ring.zero() }).collect()
}

/// Generators of the kernel of `R^k → R^rank`, `e_i ↦ vectors[i]`.
///
/// Each `(v_i, e_i)` is placed in `R^(rank + k)` and a position-over-term basis is
/// computed; basis elements vanishing on the first `rank` positions generate the kernel.
pub fn syzygy_vectors(ring: &CoordinateRing, vectors: &[Vec<Polynomial>], rank: usize) -> Vec<Vec<Polynomial>> {
    let k = vectors.len();
    if k == 0 {
        return Vec::new();
    }
    let order = ModuleOrder::pot(ring.order().clone());
    let n = ring.nvars();
    let mut gens: Vec<Vector> = Vec::with_capacity(k);
    for (i, v) in vectors.iter().enumerate() {
        let mut coords: Vec<Polynomial> = v.iter().map(|p| ring.reduce(p)).collect();
        coords.extend((0..k).map(|j| if j == i { ring.one() } else { ring.zero() }));
        gens.push(Vector::from_polys(&coords, 0, &order));
    }
    gens.extend(relation_vectors(ring, rank, 0, &order));
    engine::groebner(gens, &order, false)
        .into_iter()
        .filter(|g| g.lead().unwrap().0 .0 >= rank)
        .map(|g| {
            let mut coords = g.to_polys(rank + k, n);
            coords.drain(..rank);
            coords.into_iter().map(|p| ring.reduce(&p)).collect::<Vec<_>>()
        })
        .filter(|v: &Vec<Polynomial>| v.iter().any(|p| !p.is_zero()))
        .collect()
}

use std::fmt;
use std::sync::OnceLock;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::engine;
use crate::error::{Error, Result};
use crate::poly::{CoordinateRing, MonomialOrder, Polynomial};

/// An ideal of a coordinate ring, given by generators.
///
/// The reduced Groebner basis of the preimage in the free ring (generators plus ring
/// relations) under the ring's order is computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: CoordinateRing,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

/// Krull dimension of `R/I` and codimension of `I`, with `dim + codim = dim R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DimensionInfo {
    pub dim: i64,
    pub codim: i64,
}

impl Ideal {
    /// Zero generators (modulo the relations) are dropped; the rest are reduced.
    pub fn new(ring: &CoordinateRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check(g)?;
        }
        let generators = generators.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, gb: OnceLock::new() })
    }

    /// Parses comma-separated generators in the ring's variables.
    pub fn parse(ring: &CoordinateRing, text: &str) -> Result<Self> {
        let gens = crate::poly::parse::parse_polynomial_list(text, ring.var_names())?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &CoordinateRing) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &CoordinateRing) -> Self {
        Ideal { ring: ring.clone(), generators: vec![ring.one()], gb: OnceLock::new() }
    }

    pub fn principal(ring: &CoordinateRing, f: Polynomial) -> Result<Self> {
        Self::new(ring, vec![f])
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Generators of the preimage in the free ring.
    fn preimage_generators(&self) -> Vec<Polynomial> {
        let mut g = self.ring.relations().to_vec();
        g.extend(self.generators.iter().cloned());
        g
    }

    /// Reduced Groebner basis of the preimage under the ring's order (cached).
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| engine::ideal_basis(&self.preimage_generators(), self.ring.order()))
    }

    /// Reduced Groebner basis of the preimage under another order (not cached).
    pub fn gb_in(&self, order: &MonomialOrder) -> Vec<Polynomial> {
        if order == self.ring.order() {
            return self.gb().to_vec();
        }
        engine::ideal_basis(&self.preimage_generators(), order)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        engine::ideal_normal_form(f, self.gb(), self.ring.order())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        f.nvars() == self.ring.nvars() && self.normal_form(f).is_zero()
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality by mutual membership of generators.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    /// The first generator of `self` missing from `other`, if any.
    pub fn first_outside(&self, other: &Ideal) -> Option<Polynomial> {
        self.generators.iter().find(|g| !other.contains(g)).cloned()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal { ring: self.ring.clone(), generators: g, gb: OnceLock::new() }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = self.ring.mul(a, b);
                if !p.is_zero() {
                    g.push(p);
                }
            }
        }
        Ideal { ring: self.ring.clone(), generators: g, gb: OnceLock::new() }
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let gens = intersect_free(&self.preimage_generators(), &other.preimage_generators(), self.ring.nvars());
        self.with_generators(gens)
    }

    /// `(self : g)`, via `(self ∩ (g)) / g` in the free ring.
    pub fn quotient_by(&self, g: &Polynomial) -> Ideal {
        let g = self.ring.reduce(g);
        if g.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let n = self.ring.nvars();
        let gens = intersect_free(&self.preimage_generators(), std::slice::from_ref(&g), n)
            .into_iter()
            .map(|h| h.div_exact(&g).expect("intersection with (g) is divisible by g"))
            .collect();
        self.with_generators(gens)
    }

    /// `(self : J) = ∩ (self : g)` over the generators of `J`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.generators {
            let q = self.quotient_by(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// `(self : f^∞)` together with the least `k` with `(self : f^k) = (self : f^∞)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<(Ideal, u32)> {
        self.ring.check(f)?;
        let f = self.ring.reduce(f);
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        let sat = self.saturation_only(&f);
        let mut k = 0;
        let mut q = self.clone();
        while !sat.is_subset(&q) {
            q = q.quotient_by(&f);
            k += 1;
        }
        Ok((sat, k))
    }

    /// `(self : f^∞)` by the added-variable construction alone.
    pub fn saturation_only(&self, f: &Polynomial) -> Ideal {
        let n = self.ring.nvars();
        if f.is_unit() {
            return self.clone();
        }
        let mut gens: Vec<Polynomial> = self.preimage_generators().iter().map(|g| g.extend(1)).collect();
        let u = Polynomial::var(n + 1, n);
        gens.push(&Polynomial::one(n + 1) - &(&f.extend(1) * &u));
        let kept: Vec<usize> = (0..n).collect();
        let order = MonomialOrder::eliminating(&mask(n + 1, &[n]));
        let out = engine::ideal_basis(&gens, &order).into_iter().filter_map(|g| g.restrict(&kept)).collect();
        self.with_generators(out)
    }

    /// `(self : J^∞) = ∩ (self : g^∞)` over the generators of `J`.
    pub fn saturate_by_ideal(&self, other: &Ideal) -> Result<Ideal> {
        if other.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.generators {
            let s = if crate::fault::saturation_off_by_one() {
                let (_, k) = self.saturate(g)?;
                (1..k).fold(self.clone(), |q, _| q.quotient_by(g))
            } else {
                self.saturation_only(g)
            };
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        Ok(acc.unwrap())
    }

    /// `self ∩ ℚ[kept variables]`, returned in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Ideal {
        if drop.is_empty() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let order = MonomialOrder::eliminating(&mask(n, drop));
        let gens = engine::ideal_basis(&self.preimage_generators(), &order)
            .into_iter()
            .filter(|g| drop.iter().all(|&v| !g.uses_variable(v)))
            .collect();
        self.with_generators(gens)
    }

    pub fn dimension(&self) -> DimensionInfo {
        let n = self.ring.nvars();
        let dim = krull_dimension(n, self.gb(), self.ring.order());
        let ring_dim = krull_dimension(n, self.ring.relation_basis(), self.ring.order());
        DimensionInfo { dim, codim: ring_dim - dim }
    }

    /// `f ∈ √self`, via `1 ∈ self + (1 − f·u)`.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        let n = self.ring.nvars();
        let mut gens: Vec<Polynomial> = self.preimage_generators().iter().map(|g| g.extend(1)).collect();
        let u = Polynomial::var(n + 1, n);
        gens.push(&Polynomial::one(n + 1) - &(&f.extend(1) * &u));
        engine::ideal_basis(&gens, &MonomialOrder::DegRevLex).iter().any(|g| g.is_unit())
    }

    /// Generators with the ring relations removed, reduced and deduplicated.
    fn with_generators(&self, gens: Vec<Polynomial>) -> Ideal {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            let r = self.ring.reduce(&g);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        Ideal { ring: self.ring.clone(), generators: out, gb: OnceLock::new() }
    }

    /// A small generating set: the reduced basis with relation consequences removed.
    pub fn minimalized(&self) -> Ideal {
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut sorted: Vec<Polynomial> = self.gb().iter().map(|g| self.ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        sorted.sort_by_key(|g| g.total_degree());
        for g in sorted {
            let span = Ideal::new(&self.ring, kept.clone()).expect("same ring");
            if !span.contains(&g) {
                kept.push(g);
            }
        }
        let mut out = Ideal::new(&self.ring, kept).expect("same ring");
        let _ = out.gb.set(self.gb().to_vec());
        out.generators.sort_by(|a, b| {
            let o = self.ring.order();
            match (a.leading_monomial(o), b.leading_monomial(o)) {
                (Some(x), Some(y)) => o.cmp(y, x),
                _ => std::cmp::Ordering::Equal,
            }
        });
        out
    }

    /// Generators in the ASCII grammar.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.fmt_poly(g)).collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.equals(other)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Ideal", 2)?;
        s.serialize_field("ring", &self.ring.header())?;
        s.serialize_field("generators", &self.generator_strings())?;
        s.end()
    }
}

pub(crate) fn mask(n: usize, vars: &[usize]) -> Vec<bool> {
    (0..n).map(|i| vars.contains(&i)).collect()
}

/// `A ∩ B` in the free ring, via `t·A + (1 − t)·B` with `t` eliminated.
pub(crate) fn intersect_free(a: &[Polynomial], b: &[Polynomial], n: usize) -> Vec<Polynomial> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let mut gens: Vec<Polynomial> = a.iter().map(|g| &g.extend(1) * &t).collect();
    gens.extend(b.iter().map(|g| &g.extend(1) * &one_minus_t));
    let kept: Vec<usize> = (0..n).collect();
    let order = MonomialOrder::eliminating(&mask(n + 1, &[n]));
    engine::ideal_basis(&gens, &order).into_iter().filter_map(|g| g.restrict(&kept)).collect()
}

/// Krull dimension of `ℚ[x_1..x_n]/I` from a Groebner basis: the size of a largest set of
/// variables containing the support of no leading monomial. `-1` for the unit ideal.
pub fn krull_dimension(n: usize, basis: &[Polynomial], order: &MonomialOrder) -> i64 {
    let leads: Vec<u64> = basis
        .iter()
        .filter_map(|g| g.leading_monomial(order))
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    if leads.contains(&0) {
        return -1;
    }
    assert!(n < 64, "dimension computation supports fewer than 64 variables");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size > best && leads.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(v: &[&str]) -> CoordinateRing {
        CoordinateRing::polynomial(v)
    }

    fn ideal(r: &CoordinateRing, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn coprime_principal_intersection() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, "x").intersect(&ideal(&r, "y")).equals(&ideal(&r, "x*y")));
    }

    #[test]
    fn colon_by_x() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, "x^2, x*y").quotient(&ideal(&r, "x")).equals(&ideal(&r, "x, y")));
    }

    #[test]
    fn principal_saturation() {
        let r = ring(&["x", "z"]);
        let (s, k) = ideal(&r, "x*z").saturate(&r.parse_poly("x").unwrap()).unwrap();
        assert!(s.equals(&ideal(&r, "z")));
        assert_eq!(k, 1);
        let i = ideal(&r, "x^2*z, z^3");
        let (s, k) = i.saturate(&r.one()).unwrap();
        assert!(s.equals(&i));
        assert_eq!(k, 0);
        assert_eq!(i.saturate(&r.zero()).unwrap_err(), Error::ZeroSaturator);
    }

    #[test]
    fn cusp_by_elimination() {
        let r = ring(&["t", "x", "y"]);
        let e = ideal(&r, "x - t^2, y - t^3").eliminate(&[0]);
        assert!(e.equals(&ideal(&r, "x^3 - y^2")));
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y"]);
        assert_eq!(ideal(&r, "x, y").dimension(), DimensionInfo { dim: 0, codim: 2 });
        assert_eq!(ideal(&r, "x^3 - y^2").dimension(), DimensionInfo { dim: 1, codim: 1 });
        assert_eq!(ideal(&r, "x, y^2").dimension(), DimensionInfo { dim: 0, codim: 2 });
        assert_eq!(Ideal::unit(&r).dimension().dim, -1);
        assert_eq!(Ideal::zero(&r).dimension(), DimensionInfo { dim: 2, codim: 0 });
    }

    #[test]
    fn quotient_ring_membership() {
        let r = CoordinateRing::parse("ring x, y | relations: x^3 - y^2").unwrap();
        let i = ideal(&r, "y");
        assert!(i.contains(&r.parse_poly("x^3").unwrap()));
        assert!(!i.contains(&r.parse_poly("x").unwrap()));
        assert!(i.radical_contains(&r.parse_poly("x").unwrap()));
        assert_eq!(i.dimension(), DimensionInfo { dim: 0, codim: 1 });
    }

    #[test]
    fn intersection_is_idempotent_and_symmetric() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, "x^2, y");
        let b = ideal(&r, "x*y, y^2 - x");
        assert_eq!(a.intersect(&a).gb(), a.gb());
        assert_eq!(a.intersect(&b).gb(), b.intersect(&a).gb());
    }
}

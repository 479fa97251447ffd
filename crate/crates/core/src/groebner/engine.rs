//! Buchberger's algorithm over free modules.
//!
//! An ideal is the rank-one case. Vectors are lists of `(position, monomial)` keyed terms
//! stored ascending under a [`ModuleOrder`], so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PositionRule {
    /// Compare monomials first, positions break ties.
    TermOverPosition,
    /// Compare positions first; a lower index is larger.
    PositionOverTerm,
}

#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    pub rule: PositionRule,
}

impl ModuleOrder {
    pub fn top(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, rule: PositionRule::TermOverPosition }
    }

    pub fn pot(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, rule: PositionRule::PositionOverTerm }
    }

    pub fn cmp(&self, a: &Key, b: &Key) -> Ordering {
        match self.rule {
            PositionRule::TermOverPosition => self.mono.cmp(&a.1, &b.1).then_with(|| b.0.cmp(&a.0)),
            PositionRule::PositionOverTerm => b.0.cmp(&a.0).then_with(|| self.mono.cmp(&a.1, &b.1)),
        }
    }
}

pub(crate) type Key = (usize, Monomial);

/// A module element with terms sorted ascending; the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<(Key, Rational)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Key, Rational)> {
        self.terms.last()
    }

    pub fn from_polys(coords: &[Polynomial], offset: usize, order: &ModuleOrder) -> Self {
        let mut terms: Vec<(Key, Rational)> = coords
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| ((i + offset, m.clone()), c.clone())))
            .collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Vector { terms }
    }

    pub fn from_poly(p: &Polynomial, order: &ModuleOrder) -> Self {
        Self::from_polys(std::slice::from_ref(p), 0, order)
    }

    /// Splits back into `rank` coordinate polynomials over `nvars` variables.
    pub fn to_polys(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for ((pos, m), c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|ts| Polynomial::from_terms(nvars, ts)).collect()
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        self.to_polys(1, nvars).pop().unwrap()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in self.terms.iter_mut() {
                    *a *= &inv;
                }
            }
        }
    }

    /// `self - c * m * other`, with `m` a monomial shift; both sorted ascending.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &Vector, order: &ModuleOrder) -> Vector {
        let shifted = other.terms.iter().map(|((p, n), a)| ((*p, n.mul(m)), a * c));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut lhs = self.terms.iter().peekable();
        let mut rhs = shifted.peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(lhs.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (k, a) = rhs.next().unwrap();
                    out.push((k, -a));
                }
                (Some(l), Some(r)) => match order.cmp(&l.0, &r.0) {
                    Ordering::Less => out.push(lhs.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (k, a) = rhs.next().unwrap();
                        out.push((k, -a));
                    }
                    Ordering::Equal => {
                        let (k, a) = lhs.next().unwrap().clone();
                        let (_, b) = rhs.next().unwrap();
                        let s = a - b;
                        if !s.is_zero() {
                            out.push((k, s));
                        }
                    }
                },
            }
        }
        Vector { terms: out }
    }
}

fn find_reducer<'a>(key: &Key, basis: &'a [Vector]) -> Option<&'a Vector> {
    basis.iter().find(|g| {
        let ((p, m), _) = g.lead().expect("basis elements are nonzero");
        *p == key.0 && m.divides(&key.1)
    })
}

/// Full normal form of `f` modulo `basis` (every term irreducible afterwards).
pub(crate) fn normal_form(f: &Vector, basis: &[Vector], order: &ModuleOrder) -> Vector {
    let mut p = f.clone();
    let mut rem: Vec<(Key, Rational)> = Vec::new();
    while let Some((key, c)) = p.terms.last().cloned() {
        match find_reducer(&key, basis) {
            Some(g) => {
                let ((_, gm), gc) = g.lead().unwrap();
                let shift = gm.quotient_of(&key.1).unwrap();
                p = p.sub_scaled(&(c / gc), &shift, g, order);
            }
            None => {
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    rem.reverse();
    Vector { terms: rem }
}

/// Reduces only while the leading term is reducible.
fn top_reduce(f: Vector, basis: &[Vector], order: &ModuleOrder) -> Vector {
    let mut p = f;
    while let Some((key, c)) = p.terms.last().cloned() {
        match find_reducer(&key, basis) {
            Some(g) => {
                let ((_, gm), gc) = g.lead().unwrap();
                let shift = gm.quotient_of(&key.1).unwrap();
                p = p.sub_scaled(&(c / gc), &shift, g, order);
            }
            None => break,
        }
    }
    p
}

fn spoly(f: &Vector, g: &Vector, order: &ModuleOrder) -> Vector {
    let ((_, fm), fc) = f.lead().unwrap();
    let ((_, gm), gc) = g.lead().unwrap();
    let l = fm.lcm(gm);
    let sf = fm.quotient_of(&l).unwrap();
    let sg = gm.quotient_of(&l).unwrap();
    // (l/fm)/fc * f - (l/gm)/gc * g
    let a = Vector::zero().sub_scaled(&(-fc.recip()), &sf, f, order);
    a.sub_scaled(&gc.recip(), &sg, g, order)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Pair(usize, usize);

impl Pair {
    fn new(i: usize, j: usize) -> Self {
        if i < j {
            Pair(i, j)
        } else {
            Pair(j, i)
        }
    }
}

/// Reduced Groebner basis of the submodule generated by `gens`, sorted ascending by
/// leading term. `commutative` enables the coprime-leading-term criterion, which is only
/// sound for ideals (all positions zero).
pub(crate) fn groebner(gens: Vec<Vector>, order: &ModuleOrder, commutative: bool) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<Pair> = HashSet::new();

    let push = |h: Vector, basis: &mut Vec<Vector>, pairs: &mut Vec<Pair>, pending: &mut HashSet<Pair>| {
        let k = basis.len();
        let pos = h.lead().unwrap().0 .0;
        basis.push(h);
        for (i, b) in basis.iter().enumerate().take(k) {
            if b.lead().unwrap().0 .0 == pos {
                let p = Pair::new(i, k);
                pairs.push(p);
                pending.insert(p);
            }
        }
    };

    for g in gens {
        let mut h = top_reduce(g, &basis, order);
        if !h.is_zero() {
            h.make_monic();
            push(h, &mut basis, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let mut best = 0;
        let mut best_key: Option<Key> = None;
        for (idx, p) in pairs.iter().enumerate() {
            let (pi, mi) = &basis[p.0].lead().unwrap().0;
            let (_, mj) = &basis[p.1].lead().unwrap().0;
            let key = (*pi, mi.lcm(mj));
            let better = match &best_key {
                None => true,
                Some(b) => order.cmp(&key, b) == Ordering::Less,
            };
            if better {
                best = idx;
                best_key = Some(key);
            }
        }
        let pair = pairs.swap_remove(best);
        pending.remove(&pair);
        let lcm = best_key.unwrap();

        let (fi, fj) = (&basis[pair.0], &basis[pair.1]);
        let (mi, mj) = (&fi.lead().unwrap().0 .1, &fj.lead().unwrap().0 .1);
        if commutative && mi.is_coprime(mj) {
            continue;
        }
        // chain criterion: some third element divides the lcm and both companion pairs are done
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == pair.0 || k == pair.1 {
                return false;
            }
            let (pk, mk) = &g.lead().unwrap().0;
            *pk == lcm.0
                && mk.divides(&lcm.1)
                && !pending.contains(&Pair::new(pair.0, k))
                && !pending.contains(&Pair::new(pair.1, k))
        });
        if chain {
            continue;
        }
        let s = spoly(fi, fj, order);
        let mut h = top_reduce(s, &basis, order);
        if !h.is_zero() {
            h.make_monic();
            push(h, &mut basis, &mut pairs, &mut pending);
        }
    }

    reduce_basis(basis, order)
}

/// Minimalizes and tail-reduces a Groebner basis, returning it sorted ascending.
fn reduce_basis(basis: Vec<Vector>, order: &ModuleOrder) -> Vec<Vector> {
    let mut minimal: Vec<Vector> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    for g in sorted {
        let (gp, gm) = &g.lead().unwrap().0;
        let redundant = minimal.iter().any(|h| {
            let (hp, hm) = &h.lead().unwrap().0;
            hp == gp && hm.divides(gm)
        });
        if !redundant {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let lead = minimal[i].terms.last().unwrap().clone();
        let mut tail = minimal[i].clone();
        tail.terms.pop();
        let mut r = normal_form(&tail, &others, order);
        r.terms.push(lead);
        r.make_monic();
        out.push(r);
    }
    out
}

/// Groebner basis of an ideal given by polynomials.
pub(crate) fn ideal_basis(gens: &[Polynomial], mono: &MonomialOrder) -> Vec<Polynomial> {
    let order = ModuleOrder::top(mono.clone());
    let nvars = match gens.first() {
        Some(p) => p.nvars(),
        None => return Vec::new(),
    };
    let vs = gens.iter().filter(|p| !p.is_zero()).map(|p| Vector::from_poly(p, &order)).collect();
    groebner(vs, &order, true).iter().map(|v| v.to_poly(nvars)).collect()
}

/// Normal form of `f` modulo an ideal Groebner basis under `mono`.
pub(crate) fn ideal_normal_form(f: &Polynomial, basis: &[Polynomial], mono: &MonomialOrder) -> Polynomial {
    if f.is_zero() || basis.is_empty() {
        return f.clone();
    }
    let order = ModuleOrder::top(mono.clone());
    let b: Vec<Vector> = basis.iter().map(|p| Vector::from_poly(p, &order)).collect();
    normal_form(&Vector::from_poly(f, &order), &b, &order).to_poly(f.nvars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn poly(nvars: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(nvars, terms.iter().map(|(c, e)| (Monomial::from_exponents(e), q(*c))))
    }

    #[test]
    fn monomial_input_is_its_own_basis() {
        let gens = vec![poly(2, &[(1, &[3, 0])]), poly(2, &[(1, &[0, 3])])];
        let gb = ideal_basis(&gens, &MonomialOrder::DegRevLex);
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&gens[0]) && gb.contains(&gens[1]));
    }

    #[test]
    fn unit_ideal_collapses() {
        let gens = vec![Polynomial::one(2), poly(2, &[(1, &[1, 0])])];
        assert_eq!(ideal_basis(&gens, &MonomialOrder::DegRevLex), vec![Polynomial::one(2)]);
    }

    #[test]
    fn permuted_generators_give_the_same_basis() {
        let a = poly(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]);
        let b = poly(3, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]);
        let c = poly(3, &[(1, &[0, 2, 0]), (1, &[1, 0, 1])]);
        let g1 = ideal_basis(&[a.clone(), b.clone(), c.clone()], &MonomialOrder::DegRevLex);
        let g2 = ideal_basis(&[c, a, b], &MonomialOrder::DegRevLex);
        assert_eq!(g1, g2);
    }
}

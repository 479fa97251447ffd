//! Random inputs and brute-force oracles shared by the property suites.

#![allow(dead_code)]

use proptest::prelude::*;
use sheaf_forge::poly::Monomial;
use sheaf_forge::{CoordinateRing, MonomialOrder, Polynomial, Rational};

pub const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring(nvars: usize) -> CoordinateRing {
    CoordinateRing::polynomial(&NAMES[..nvars])
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn exponents(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, nvars).prop_filter("bounded degree", move |e| e.iter().sum::<u32>() <= max_deg)
}

/// Up to `max_terms` terms with small integer coefficients.
pub fn polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exponents(nvars, max_deg), -3i64..=3), 1..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), rat(c))))
    })
}

pub fn nonzero_polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(nvars, max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Generator lists small enough for Buchberger to finish quickly over ℚ.
pub fn generators(nvars: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    let deg = if nvars <= 2 { 3 } else { 2 };
    prop::collection::vec(nonzero_polynomial(nvars, deg, 3), 1..=3)
}

/// `(nvars, generators)` with two or three variables.
pub fn ideal_input() -> impl Strategy<Value = (usize, Vec<Polynomial>)> {
    (2usize..=3).prop_flat_map(|n| (Just(n), generators(n)))
}

pub fn monomial(nvars: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    exponents(nvars, max_deg).prop_map(|e| Monomial::from_exponents(&e))
}

/// Generators of a monomial ideal together with a polynomial to test.
pub fn staircase_input() -> impl Strategy<Value = (usize, Vec<Monomial>, Polynomial)> {
    (2usize..=3).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(monomial(n, 4), 1..=4), polynomial(n, 6, 4))
    })
}

/// A polynomial lies in a monomial ideal iff each of its terms is divisible by a generator.
pub fn staircase_contains(gens: &[Monomial], f: &Polynomial) -> bool {
    f.terms().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
}

/// Textbook multivariate division; returns the remainder.
pub fn divide(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.nvars());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let (lm, lc) = g.leading_term(order)?;
            lm.quotient_of(&m).map(|q| (g, q, &c / lc))
        });
        match divisor {
            Some((g, q, k)) => p = &p - &g.mul_monomial(&q).scale(&k),
            None => {
                let t = Polynomial::term(m, c);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

/// S-polynomial of `f` and `g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (lf, cf) = f.leading_term(order).unwrap();
    let (lg, cg) = g.leading_term(order).unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_monomial(&lf.quotient_of(&l).unwrap()).scale(&(Rational::from_integer(1.into()) / cf));
    let b = g.mul_monomial(&lg.quotient_of(&l).unwrap()).scale(&(Rational::from_integer(1.into()) / cg));
    &a - &b
}

/// Buchberger's criterion checked by plain division: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    (0..basis.len()).all(|i| (i + 1..basis.len()).all(|j| divide(&s_polynomial(&basis[i], &basis[j], order), basis, order).is_zero()))
}

/// Monic leading coefficients and no term divisible by another element's leading monomial.
pub fn is_reduced(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        let (_, lc) = g.leading_term(order).unwrap();
        *lc == rat(1)
            && g.terms().all(|(m, _)| {
                basis.iter().enumerate().all(|(j, h)| j == i || !h.leading_monomial(order).unwrap().divides(m))
            })
    })
}

/// `Σ_k v_k · g_k`.
pub fn combine(coeffs: &[Polynomial], gens: &[Polynomial]) -> Polynomial {
    let n = gens.first().map_or(0, |g| g.nvars());
    coeffs.iter().zip(gens).fold(Polynomial::zero(n), |acc, (c, g)| &acc + &(c * g))
}

/// `Σ_k c_k · columns[k]` in a free module of rank `rank`.
pub fn combine_columns(coeffs: &[Polynomial], columns: &[Vec<Polynomial>], nvars: usize, rank: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(nvars); rank];
    for (c, col) in coeffs.iter().zip(columns) {
        for (o, e) in out.iter_mut().zip(col) {
            *o = &*o + &(c * e);
        }
    }
    out
}

pub mod props {
    //! Property bodies: `Err` carries a readable counterexample.

    use super::*;
    use sheaf_forge::groebner::syzygy_vectors;
    use sheaf_forge::modules::{free_resolution, presentation_of_ideal};
    use sheaf_forge::Ideal;

    type Verdict = Result<(), String>;

    fn show(r: &CoordinateRing, ps: &[Polynomial]) -> String {
        ps.iter().map(|p| r.fmt_poly(p)).collect::<Vec<_>>().join(", ")
    }

    /// The reduced basis is independent of generator order and passes Buchberger's criterion.
    pub fn gb_determinism(n: usize, gens: &[Polynomial]) -> Verdict {
        let r = ring(n);
        let order = r.order().clone();
        let sorted = |g: &[Polynomial]| {
            let mut s: Vec<String> = g.iter().map(|p| r.fmt_poly(p)).collect();
            s.sort();
            s
        };
        let a = Ideal::new(&r, gens.to_vec()).map_err(|e| e.to_string())?;
        let rev: Vec<Polynomial> = gens.iter().rev().cloned().collect();
        let b = Ideal::new(&r, rev).map_err(|e| e.to_string())?;
        let fresh = Ideal::new(&r, gens.to_vec()).map_err(|e| e.to_string())?;
        if sorted(a.gb()) != sorted(b.gb()) || sorted(a.gb()) != sorted(fresh.gb()) {
            return Err(format!("basis depends on input order for ({})", show(&r, gens)));
        }
        if !is_groebner_basis(a.gb(), &order) || !is_reduced(a.gb(), &order) {
            return Err(format!("({}) is not a reduced basis of ({})", show(&r, a.gb()), show(&r, gens)));
        }
        if let Some(g) = gens.iter().find(|g| !divide(g, a.gb(), &order).is_zero()) {
            return Err(format!("generator {} does not reduce to zero", r.fmt_poly(g)));
        }
        let lex = a.gb_in(&MonomialOrder::Lex);
        if !is_groebner_basis(&lex, &MonomialOrder::Lex) {
            return Err(format!("lex basis ({}) fails Buchberger's criterion", show(&r, &lex)));
        }
        Ok(())
    }

    /// `(I : f^∞) = (I : f^k)` with `k` minimal, `f^k S ⊆ I` and `(S : f) = S`.
    pub fn saturation_stabilizes(n: usize, gens: &[Polynomial], f: &Polynomial) -> Verdict {
        let r = ring(n);
        let i = Ideal::new(&r, gens.to_vec()).map_err(|e| e.to_string())?;
        let (s, k) = i.saturate(f).map_err(|e| e.to_string())?;
        let fk = f.pow(k);
        let ctx = || format!("I = ({}), f = {}, k = {k}", show(&r, gens), r.fmt_poly(f));
        if let Some(g) = s.generators().iter().find(|g| !divide(&(&fk * g), i.gb(), r.order()).is_zero()) {
            return Err(format!("{}: f^k·{} ∉ I", ctx(), r.fmt_poly(g)));
        }
        if !i.is_subset(&s) || !s.quotient_by(f).equals(&s) {
            return Err(format!("{}: saturation not stable", ctx()));
        }
        if !i.quotient_by(&fk).equals(&s) {
            return Err(format!("{}: (I : f^k) differs from the saturation", ctx()));
        }
        if k > 0 && i.quotient_by(&f.pow(k - 1)).equals(&s) {
            return Err(format!("{}: exponent not minimal", ctx()));
        }
        Ok(())
    }

    /// Every syzygy annihilates the generators and the Koszul syzygies are among them.
    pub fn syzygies_are_exact(n: usize, gens: &[Polynomial]) -> Verdict {
        let r = ring(n);
        let vectors: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let syz = syzygy_vectors(&r, &vectors, 1);
        for s in &syz {
            if s.len() != gens.len() || !combine(s, gens).is_zero() {
                return Err(format!("({}) is not a syzygy of ({})", show(&r, s), show(&r, gens)));
            }
        }
        if syz.is_empty() {
            return if gens.len() <= 1 { Ok(()) } else { Err(format!("no syzygies of ({})", show(&r, gens))) };
        }
        let module = sheaf_forge::groebner::Submodule::new(&r, gens.len(), syz).map_err(|e| e.to_string())?;
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let mut v = vec![r.zero(); gens.len()];
                v[a] = gens[b].clone();
                v[b] = -&gens[a];
                if !module.contains(&v) {
                    return Err(format!("Koszul syzygy ({}) missing for ({})", show(&r, &v), show(&r, gens)));
                }
            }
        }
        Ok(())
    }

    /// Consecutive maps of the resolution compose to zero and the resolution terminates.
    pub fn resolution_composes(n: usize, gens: &[Polynomial]) -> Verdict {
        let r = ring(n);
        let p = presentation_of_ideal(&r, gens).map_err(|e| e.to_string())?;
        let res = free_resolution(&p, n + 1);
        if !res.complete {
            return Err(format!("resolution of ({}) did not terminate", show(&r, gens)));
        }
        for i in 0..res.maps.len() {
            if res.maps[i].len() != res.ranks[i + 1] || res.maps[i].iter().any(|c| c.len() != res.ranks[i]) {
                return Err(format!("map {i} has the wrong shape for ({})", show(&r, gens)));
            }
        }
        for i in 0..res.maps.len().saturating_sub(1) {
            for col in &res.maps[i + 1] {
                let image = combine_columns(col, &res.maps[i], n, res.ranks[i]);
                if image.iter().any(|e| !e.is_zero()) {
                    return Err(format!("maps {i} and {} do not compose to zero for ({})", i + 1, show(&r, gens)));
                }
            }
        }
        Ok(())
    }

    /// Membership in a monomial ideal agrees with the divisibility staircase.
    pub fn staircase_membership(n: usize, gens: &[Monomial], f: &Polynomial) -> Verdict {
        let r = ring(n);
        let polys: Vec<Polynomial> = gens.iter().map(|m| Polynomial::term(m.clone(), rat(1))).collect();
        let i = Ideal::new(&r, polys.clone()).map_err(|e| e.to_string())?;
        let expected = staircase_contains(gens, f);
        if i.contains(f) != expected {
            return Err(format!("{} ∈ ({}): kernel says {}, staircase says {expected}", r.fmt_poly(f), show(&r, &polys), !expected));
        }
        Ok(())
    }
}

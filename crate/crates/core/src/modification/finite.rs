use std::collections::HashMap;

use super::{Modification, ModificationKind};
use crate::error::{Error, Result};
use crate::groebner::{eliminate_module, syzygy_vectors, Ideal};
use crate::modules::Presentation;
use crate::poly::{CoordinateRing, Monomial, MonomialOrder, Polynomial, RingMap};

/// The graph ideal `(X_i − φ(X_i))` of `φ: A → B` in `B[X]`, under an order eliminating
/// the variables of `B`.
struct Graph {
    ideal: Ideal,
    nt: usize,
    ns: usize,
}

impl Graph {
    fn new(map: &RingMap) -> Result<Self> {
        let (source, target) = (map.source(), map.target());
        let (nt, ns) = (target.nvars(), source.nvars());
        let mask: Vec<bool> = (0..nt + ns).map(|v| v < nt).collect();
        let joint = target.adjoin(&target.fresh_names("w", ns), MonomialOrder::eliminating(&mask))?;
        let gens = map.images().iter().enumerate().map(|(i, img)| &joint.gen(nt + i) - &img.extend(ns)).collect();
        let ideal = Ideal::new(&joint, gens)?;
        for r in source.relations() {
            // the relations of A hold in B through φ
            debug_assert!(ideal.contains(&r.embed(nt + ns, &(nt..nt + ns).collect::<Vec<_>>())));
        }
        Ok(Graph { ideal, nt, ns })
    }

    fn joint(&self) -> &CoordinateRing {
        self.ideal.ring()
    }

    fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let e = m.exponents();
        (Monomial::from_exponents(&e[..self.nt]), Monomial::from_exponents(&e[self.nt..]))
    }

    /// Monomials of `B` not divisible by a leading monomial free of `X`: they generate `B`
    /// over `A`. `None` if there are infinitely many.
    fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let order = self.joint().order().clone();
        let leads: Vec<Monomial> = self
            .ideal
            .gb()
            .iter()
            .filter_map(|g| g.leading_monomial(&order))
            .map(|m| self.split(m))
            .filter(|(_, x)| x.is_one())
            .map(|(t, _)| t)
            .collect();
        let mut bounds = Vec::with_capacity(self.nt);
        for v in 0..self.nt {
            let pure = leads.iter().filter(|m| m.support().all(|w| w == v)).map(|m| m.exponents()[v]).min()?;
            bounds.push(pure);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nt];
        loop {
            let m = Monomial::from_exponents(&exps);
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == self.nt {
                    return Some(out);
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    /// `f ∈ B` as `Σ a_k β_k` with `a_k ∈ A`, using the normal form in the joint ring.
    fn decompose(&self, f: &Polynomial, basis: &[Monomial], source: &CoordinateRing) -> Result<Vec<Polynomial>> {
        let nf = self.ideal.normal_form(&f.extend(self.ns));
        let mut coeffs: Vec<Vec<(Monomial, crate::poly::Rational)>> = vec![Vec::new(); basis.len()];
        for (m, c) in nf.terms() {
            let (t, x) = self.split(m);
            let k = basis.iter().position(|b| *b == t).ok_or_else(|| {
                Error::NotFinite(format!("normal form term outside the supplied basis (exponents {:?})", t.exponents()))
            })?;
            coeffs[k].push((x, c.clone()));
        }
        Ok(coeffs.into_iter().map(|ts| source.reduce(&Polynomial::from_terms(self.ns, ts))).collect())
    }
}

fn basis_monomials(map: &RingMap, basis: &[Polynomial]) -> Result<Vec<Monomial>> {
    if basis.is_empty() {
        return Err(Error::NotFinite("no module basis supplied".into()));
    }
    basis
        .iter()
        .map(|b| {
            let mut terms = b.terms();
            match (terms.next(), terms.next()) {
                (Some((m, c)), None) if c == &num_traits::One::one() => Ok(m.clone()),
                _ => Err(Error::NotFinite(format!(
                    "basis element {} is not a monomial",
                    map.target().fmt_poly(b)
                ))),
            }
        })
        .collect()
}

/// Monomials generating the target of a finite map as a module over its source.
pub fn finiteness_basis(map: &RingMap) -> Result<Vec<Polynomial>> {
    let graph = Graph::new(map)?;
    let std = graph
        .standard_monomials()
        .ok_or_else(|| Error::NotFinite("some target variable satisfies no monic equation".into()))?;
    Ok(std.into_iter().map(|m| Polynomial::term(m, num_traits::One::one())).collect())
}

/// The supplied basis must be monomials containing every standard monomial.
pub(super) fn check_basis(map: &RingMap, basis: &[Polynomial]) -> Result<()> {
    let monos = basis_monomials(map, basis)?;
    let graph = Graph::new(map)?;
    let std = graph
        .standard_monomials()
        .ok_or_else(|| Error::NotFinite("some target variable satisfies no monic equation".into()))?;
    for m in std {
        if !monos.contains(&m) {
            let p = Polynomial::term(m, num_traits::One::one());
            return Err(Error::NotFinite(format!("basis misses {}", map.target().fmt_poly(&p))));
        }
    }
    Ok(())
}

/// Restriction of scalars along a finite map. With target generators `e_j` and module
/// basis `β_k`, the source module is generated by `β_k e_j` (index `j·r + k`); relations
/// are the `A`-linear relations among the `β_k` in each slot and every `β_k`-multiple of
/// a target relation, rewritten over `A`.
pub fn pushforward_finite(p: &Presentation, m: &Modification) -> Result<Presentation> {
    let ModificationKind::FiniteMap { map, basis } = &m.kind else {
        return Err(Error::InvalidArgument("restriction of scalars needs a finite map".into()));
    };
    if p.ring() != map.target() {
        return Err(Error::InvalidArgument("presentation is not over the target of the map".into()));
    }
    let source = map.source();
    let monos = basis_monomials(map, basis)?;
    let graph = Graph::new(map)?;
    let (nt, ns) = (graph.nt, graph.ns);
    let joint = graph.joint().clone();
    let r = basis.len();
    let b = p.num_generators();

    // A-relations among the β_k: syzygies of (β, graph generators), projected and
    // intersected with ℚ[X]^r.
    let mut vectors: Vec<Vec<Polynomial>> = basis.iter().map(|v| vec![v.extend(ns)]).collect();
    vectors.extend(graph.ideal.generators().iter().map(|g| vec![g.clone()]));
    let mut projected: Vec<Vec<Polynomial>> =
        syzygy_vectors(&joint, &vectors, 1).into_iter().map(|s| s[..r].to_vec()).collect();
    for k in 0..r {
        for rel in joint.relation_basis() {
            let mut v = vec![joint.zero(); r];
            v[k] = rel.clone();
            projected.push(v);
        }
    }
    let drop: Vec<usize> = (0..nt).collect();
    let kept: Vec<usize> = (nt..nt + ns).collect();
    let mut basis_relations: Vec<Vec<Polynomial>> = Vec::new();
    for v in eliminate_module(nt + ns, r, &projected, &drop) {
        let w: Vec<Polynomial> =
            v.iter().map(|p| source.reduce(&p.restrict(&kept).expect("target variables eliminated"))).collect();
        if w.iter().any(|p| !p.is_zero()) && !basis_relations.contains(&w) {
            basis_relations.push(w);
        }
    }

    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for j in 0..b {
        for a in &basis_relations {
            let mut v = vec![source.zero(); b * r];
            v[j * r..(j + 1) * r].clone_from_slice(a);
            cols.push(v);
        }
    }
    let mut cache: HashMap<(usize, usize, usize), Vec<Polynomial>> = HashMap::new();
    for (ci, c) in p.columns().iter().enumerate() {
        for (k, beta) in basis.iter().enumerate() {
            let mut v = vec![source.zero(); b * r];
            for (j, entry) in c.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let parts = match cache.get(&(ci, k, j)) {
                    Some(parts) => parts.clone(),
                    None => {
                        let parts = graph.decompose(&p.ring().mul(beta, entry), &monos, source)?;
                        cache.insert((ci, k, j), parts.clone());
                        parts
                    }
                };
                for (l, a) in parts.into_iter().enumerate() {
                    v[j * r + l] = &v[j * r + l] + &a;
                }
            }
            cols.push(v);
        }
    }
    Presentation::new(source, b * r, cols)
}

#[cfg(test)]
mod tests {
    use super::super::build_modification;
    use super::*;
    use crate::groebner::Submodule;
    use crate::modules::torsion_submodule;

    fn normalization() -> Modification {
        let cusp = CoordinateRing::parse("ring x, y | relations: x^3 - y^2 | domain").unwrap();
        let line = CoordinateRing::polynomial(&["t"]);
        let map = RingMap::new(cusp, line.clone(), vec![line.parse_poly("t^2").unwrap(), line.parse_poly("t^3").unwrap()])
            .unwrap();
        let basis = vec![line.one(), line.parse_poly("t").unwrap()];
        build_modification(ModificationKind::FiniteMap { map, basis }).unwrap()
    }

    #[test]
    fn cusp_normalization_basis() {
        let m = normalization();
        let ModificationKind::FiniteMap { map, .. } = &m.kind else { unreachable!() };
        let std: Vec<String> = finiteness_basis(map).unwrap().iter().map(|p| map.target().fmt_poly(p)).collect();
        assert_eq!(std, ["1", "t"]);
        let short = ModificationKind::FiniteMap { map: map.clone(), basis: vec![map.target().one()] };
        assert!(matches!(build_modification(short), Err(Error::NotFinite(_))));
        let none = ModificationKind::FiniteMap { map: map.clone(), basis: vec![] };
        assert!(matches!(build_modification(none), Err(Error::NotFinite(_))));
    }

    #[test]
    fn structure_sheaf_pushes_to_the_normalization_module() {
        let m = normalization();
        let line = &m.charts[0].ring;
        let out = pushforward_finite(&Presentation::free(line, 1), &m).unwrap();
        let cusp = &m.base;
        let expected = Submodule::new(
            cusp,
            2,
            vec![
                vec![cusp.parse_poly("-y").unwrap(), cusp.parse_poly("x").unwrap()],
                vec![cusp.parse_poly("-x^2").unwrap(), cusp.parse_poly("y").unwrap()],
            ],
        )
        .unwrap();
        assert!(out.relation_module().equals(&expected));
        assert!(torsion_submodule(&out).unwrap().is_zero());
    }

    #[test]
    fn zero_module_pushes_to_zero() {
        let m = normalization();
        let line = &m.charts[0].ring;
        let zero = Presentation::free(line, 1).with_columns(&[vec![line.one()]]).unwrap();
        assert!(pushforward_finite(&zero, &m).unwrap().is_zero_module());
        assert_eq!(pushforward_finite(&Presentation::free(line, 0), &m).unwrap().num_generators(), 0);
    }

    #[test]
    fn blowups_are_rejected() {
        let m = build_modification(ModificationKind::BlowupOrigin { n: 2 }).unwrap();
        assert!(pushforward_finite(&Presentation::free(&m.charts[0].ring, 1), &m).is_err());
    }
}

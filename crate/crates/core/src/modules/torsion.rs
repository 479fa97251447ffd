use serde::Serialize;

use super::invariants::{fitting_ideal, generic_rank, least_degree_generator};
use super::presentation::{minimal_subset, FreeElement, Presentation};
use crate::error::Result;
use crate::groebner::{syzygy_vectors, Ideal};
use crate::poly::Polynomial;

/// Largest exponent tried when looking for an annihilating power.
const MAX_WITNESS_POWER: u32 = 64;

/// The torsion submodule `T(S)` and the torsion-free quotient `S/T(S)`.
#[derive(Clone, Debug)]
pub struct TorsionResult {
    /// Coset representatives in `R^b` of generators of `T(S)`.
    pub torsion_generators: Vec<FreeElement>,
    /// `saturator^k` annihilating the matching generator, with `k` least.
    pub witnesses: Vec<Polynomial>,
    pub witness_exponents: Vec<u32>,
    /// The element of `Fitt_rank` used for the saturation; `None` for locally free input.
    pub saturator: Option<Polynomial>,
    /// `coker [M | torsion generators]`.
    pub quotient: Presentation,
}

impl TorsionResult {
    pub fn is_zero(&self) -> bool {
        self.torsion_generators.is_empty()
    }

    /// JSON-friendly summary.
    pub fn summary(&self) -> TorsionSummary {
        let ring = self.quotient.ring();
        TorsionSummary {
            torsion_free: self.is_zero(),
            saturator: self.saturator.as_ref().map(|f| ring.fmt_poly(f)),
            torsion_generators: self.torsion_generators.iter().map(|g| g.to_strings()).collect(),
            witnesses: self.witnesses.iter().map(|w| ring.fmt_poly(w)).collect(),
            quotient_generators: self.quotient.num_generators(),
            quotient_matrix: self.quotient.matrix_strings(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionSummary {
    pub torsion_free: bool,
    pub saturator: Option<String>,
    pub torsion_generators: Vec<Vec<String>>,
    pub witnesses: Vec<String>,
    pub quotient_generators: usize,
    pub quotient_matrix: Vec<Vec<String>>,
}

/// Torsion of `coker M` over a domain, as `(im M : f^∞) / im M` for a least-degree
/// nonzero `f ∈ Fitt_rank`: off `V(f)` the module is locally free, so every torsion
/// class is killed by a power of `f`.
pub fn torsion_submodule(p: &Presentation) -> Result<TorsionResult> {
    let ring = p.ring().clone();
    let b = p.num_generators();
    let none = |q: &Presentation| TorsionResult {
        torsion_generators: Vec::new(),
        witnesses: Vec::new(),
        witness_exponents: Vec::new(),
        saturator: None,
        quotient: q.clone(),
    };
    if b == 0 {
        return Ok(none(p));
    }
    let fitt = fitting_ideal(p, generic_rank(p));
    if fitt.is_unit() {
        return Ok(none(p));
    }
    let n = p.relation_module();
    let Some(f) = least_degree_generator(&fitt) else {
        // Fitt_rank = 0 cannot happen over a domain; treat the whole module as torsion
        let gens: Vec<FreeElement> = (0..b).map(|j| FreeElement::unit(&ring, b, j)).collect();
        let cols: Vec<Vec<Polynomial>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        return Ok(TorsionResult {
            witnesses: vec![ring.zero(); b],
            witness_exponents: vec![0; b],
            torsion_generators: gens,
            saturator: None,
            quotient: p.with_columns(&cols)?,
        });
    };
    let sat = n.saturate(&f)?;
    let candidates: Vec<Vec<Polynomial>> = sat
        .generators()
        .iter()
        .map(|v| n.normal_form(v))
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    // drop candidates already generated by the relations and the earlier ones
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    let mut span_cols: Vec<Vec<Polynomial>> = p.columns().to_vec();
    let mut sorted = candidates;
    sorted.sort_by_key(|v| v.iter().map(|c| c.total_degree()).max().unwrap_or(0));
    for v in sorted {
        let span = crate::groebner::Submodule::new(&ring, b, span_cols.clone())?;
        if !span.contains(&v) {
            span_cols.push(v.clone());
            kept.push(v);
        }
    }
    let mut witnesses = Vec::new();
    let mut exps = Vec::new();
    for v in &kept {
        let mut k = 1;
        let mut power = f.clone();
        loop {
            let scaled: Vec<Polynomial> = v.iter().map(|c| ring.mul(c, &power)).collect();
            if n.contains(&scaled) || k >= MAX_WITNESS_POWER {
                break;
            }
            k += 1;
            power = ring.mul(&power, &f);
        }
        witnesses.push(power);
        exps.push(k);
    }
    let quotient = p.with_columns(&kept)?;
    let torsion_generators = kept.into_iter().map(|v| FreeElement::new(&ring, v)).collect::<Result<Vec<_>>>()?;
    Ok(TorsionResult { torsion_generators, witnesses, witness_exponents: exps, saturator: Some(f), quotient })
}

pub fn is_torsion_free(p: &Presentation) -> Result<bool> {
    Ok(torsion_submodule(p)?.is_zero())
}

/// `ann(v) = {g : g·v ∈ im M}`, from the syzygies of `[v | M]`.
pub fn annihilator(p: &Presentation, v: &[Polynomial]) -> Ideal {
    let ring = p.ring();
    let mut vectors = vec![v.to_vec()];
    vectors.extend(p.columns().iter().cloned());
    let gens: Vec<Polynomial> = syzygy_vectors(ring, &vectors, p.num_generators())
        .into_iter()
        .map(|s| s[0].clone())
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// `ann(T) = ∩ ann(t_i)` over the torsion generators; the unit ideal if there are none.
pub fn torsion_annihilator(p: &Presentation, t: &TorsionResult) -> Ideal {
    let mut acc = Ideal::unit(p.ring());
    for g in &t.torsion_generators {
        acc = acc.intersect(&annihilator(p, g.coords()));
    }
    acc
}

/// Generators of the torsion quotient reduced to a minimal set of relation columns.
pub fn torsion_free_quotient(p: &Presentation) -> Result<Presentation> {
    let q = torsion_submodule(p)?.quotient;
    let cols = minimal_subset(q.ring(), q.num_generators(), q.columns().iter().cloned());
    let mut out = Presentation::new(q.ring(), q.num_generators(), cols)?;
    if let Some(v) = q.values() {
        out = out.with_values(v.to_vec())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::presentation_of_ideal;
    use super::*;
    use crate::poly::CoordinateRing;

    #[test]
    fn residue_field_is_all_torsion() {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        let p = Presentation::from_rows(&r, vec![vec![r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()]]).unwrap();
        let t = torsion_submodule(&p).unwrap();
        assert!(!t.is_zero());
        assert!(t.quotient.is_zero_module());
        for (g, w) in t.torsion_generators.iter().zip(&t.witnesses) {
            assert!(p.is_zero_class(g.scale(w).coords()));
        }
    }

    #[test]
    fn ideals_are_torsion_free() {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        let g: Vec<Polynomial> = ["x^2", "x*y^2", "y^4"].iter().map(|s| r.parse_poly(s).unwrap()).collect();
        assert!(is_torsion_free(&presentation_of_ideal(&r, &g).unwrap()).unwrap());
        assert!(is_torsion_free(&Presentation::free(&r, 2)).unwrap());
        assert!(is_torsion_free(&Presentation::free(&r, 0)).unwrap());
    }

    #[test]
    fn pulled_back_cube_ideal_has_torsion() {
        let r = CoordinateRing::polynomial(&["x", "t"]);
        let p = Presentation::from_rows(
            &r,
            vec![vec![r.parse_poly("x^3*t^3").unwrap()], vec![r.parse_poly("-x^3").unwrap()]],
        )
        .unwrap();
        let t = torsion_submodule(&p).unwrap();
        assert!(!t.is_zero());
        // the class of t^3 e1 - e2 is killed by x^3
        let v = [r.parse_poly("t^3").unwrap(), r.parse_poly("-1").unwrap()];
        assert!(p.is_zero_class(&v.iter().map(|c| c * &r.parse_poly("x^3").unwrap()).collect::<Vec<_>>()));
        assert!(t.quotient.is_zero_class(&v));
        assert!(is_torsion_free(&t.quotient).unwrap());
        let ann = torsion_annihilator(&p, &t);
        assert!(ann.equals(&Ideal::parse(&r, "x^3").unwrap()));
    }
}

use std::collections::HashMap;

use serde::Serialize;

use super::Modification;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Submodule};
use crate::linalg;
use crate::modules::Presentation;
use crate::poly::{Monomial, Polynomial, Rational};

/// The image in the base of the degree-bounded sections of a module on the blown-up
/// plane.
#[derive(Clone, Debug, Serialize)]
pub struct SectionImage {
    pub ideal: Ideal,
    /// The image at bound `degree_bound − 1`.
    pub previous: Ideal,
    /// The image did not change between the last two bounds.
    pub stable: bool,
    pub degree_bound: u32,
    /// Dimension of the section space at the final bound, torsion sections included.
    pub section_count: usize,
}

fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..nvars {
                let n = m.mul(&Monomial::var(nvars, v, 1));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Chart-1 submodules whose membership decides gluing over the overlap `t ≠ 0`.
///
/// A section is a fiberwise-linear function on the reduced linear space of the module.
/// Its zero set over chart 1 splits into the closure of the part off the exceptional
/// divisor and the part over `x = 0`, so a vector restricts to zero iff it lies in
/// `(im M : x^∞)` and in `im M + x·R^b`. Both are saturated by `t`, which makes
/// membership after clearing denominators exact.
struct GluingTest {
    torsion_closure: Submodule,
    fiber_span: Submodule,
}

impl GluingTest {
    fn new(p: &Presentation, u: usize, d: usize) -> Result<Self> {
        let ring = p.ring();
        let b = p.num_generators();
        let (x, t) = (ring.gen(u), ring.gen(d));
        let torsion_closure = p.relation_module().saturate(&ring.mul(&x, &t))?;
        let mut cols = p.columns().to_vec();
        for j in 0..b {
            let mut v = vec![ring.zero(); b];
            v[j] = x.clone();
            cols.push(v);
        }
        let fiber_span = Submodule::new(ring, b, cols)?.saturate(&t)?;
        Ok(GluingTest { torsion_closure, fiber_span })
    }
}

struct SectionSolver<'a> {
    charts: &'a [Presentation],
    m: &'a Modification,
    test: GluingTest,
}

impl SectionSolver<'_> {
    /// Image ideal and section-space dimension for chart coefficients of degree ≤ `d`.
    fn solve(&self, d: u32) -> Result<(Ideal, usize)> {
        let (c1, c2) = (&self.charts[0], &self.charts[1]);
        let chart = &self.m.charts[0];
        let overlap = chart.overlap_with(1).expect("plane charts overlap");
        let r1 = c1.ring();
        let b = c1.num_generators();
        let t = r1.gen(overlap.denominator_var);
        let t_d = t.pow(d);
        let monos1 = monomials_up_to(r1.nvars(), d);
        let monos2 = monomials_up_to(c2.ring().nvars(), d);

        // unknown i contributes `w_i` to `t^d (σ_1 − σ_2)` written on chart 1
        let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
        let mut contributions: Vec<Vec<Polynomial>> = Vec::new();
        for j in 0..b {
            for m in &monos1 {
                let mut w = vec![r1.zero(); b];
                w[j] = &t_d * &Polynomial::term(m.clone(), Rational::from_integer(1.into()));
                unknowns.push((0, j, m.clone()));
                contributions.push(w);
            }
            for m in &monos2 {
                let (num, e) = overlap.transport(&Polynomial::term(m.clone(), Rational::from_integer(1.into())));
                let mut w = vec![r1.zero(); b];
                w[j] = -(&num * &t.pow(d - e));
                unknowns.push((1, j, m.clone()));
                contributions.push(w);
            }
        }
        let mut rows: HashMap<(u8, usize, Monomial), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
        for (col, w) in contributions.iter().enumerate() {
            for (tag, module) in [(0u8, &self.test.torsion_closure), (1u8, &self.test.fiber_span)] {
                for (pos, p) in module.normal_form(w).iter().enumerate() {
                    for (mono, c) in p.terms() {
                        let n = rows.len();
                        let row = *rows.entry((tag, pos, mono.clone())).or_insert(n);
                        entries.push((row, col, c.clone()));
                    }
                }
            }
        }
        let ncols = unknowns.len();
        let mut matrix = vec![vec![Rational::from_integer(0.into()); ncols]; rows.len()];
        for (row, col, c) in entries {
            matrix[row][col] += c;
        }
        let kernel = if matrix.is_empty() {
            (0..ncols)
                .map(|i| (0..ncols).map(|k| Rational::from_integer(i64::from(i == k).into())).collect())
                .collect()
        } else {
            linalg::kernel(&matrix, ncols)
        };

        let values = c1.values().expect("checked by the caller");
        let mut images = Vec::new();
        for v in &kernel {
            let mut value = r1.zero();
            for (c, (chart_idx, j, m)) in v.iter().zip(&unknowns) {
                if *chart_idx == 0 && !num_traits::Zero::is_zero(c) {
                    let term = Polynomial::term(m.clone(), c.clone());
                    value = &value + &(&term * &values[*j]);
                }
            }
            images.push(to_base(&r1.reduce(&value), &self.m.base, chart.exceptional_var.unwrap(), overlap.denominator_var)?);
        }
        Ok((Ideal::new(&self.m.base, images)?.minimalized(), kernel.len()))
    }
}

/// Rewrites a chart-1 function `f(x, t)` through `t = y/x`; fails unless regular.
fn to_base(f: &Polynomial, base: &crate::poly::CoordinateRing, u: usize, t: usize) -> Result<Polynomial> {
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let (a, k) = (e[u], e[t]);
        if a < k {
            return Err(Error::Incompatible("section value is not regular on the base".into()));
        }
        let mut exps = vec![0u32; 2];
        exps[u] = a - k;
        exps[t] = k;
        terms.push((Monomial::from_exponents(&exps), c.clone()));
    }
    Ok(Polynomial::from_terms(base.nvars(), terms))
}

/// Sections of a module on the blown-up plane whose chart coefficients have degree at
/// most `degree_bound`, mapped to the base through the generator values. Two chart
/// sections glue when their difference vanishes as a fiberwise-linear function on the
/// reduced linear space over the overlap. `stable` compares with the bound one lower.
pub fn truncated_global_sections(charts: &[Presentation], m: &Modification, degree_bound: u32) -> Result<SectionImage> {
    if !m.is_plane_origin_blowup() {
        return Err(Error::UnsupportedCenter("section computation needs the blown-up plane".into()));
    }
    if charts.len() != 2 {
        return Err(Error::InvalidArgument("one presentation per chart required".into()));
    }
    for (p, c) in charts.iter().zip(&m.charts) {
        if p.ring() != &c.ring {
            return Err(Error::InvalidArgument("chart presentation over the wrong ring".into()));
        }
        if p.values().is_none() {
            return Err(Error::InvalidArgument("generator values are needed to map sections to the base".into()));
        }
    }
    if charts[0].num_generators() != charts[1].num_generators() {
        return Err(Error::InvalidArgument("chart presentations must share their generators".into()));
    }
    if degree_bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be positive".into()));
    }
    let chart = &m.charts[0];
    let u = chart.exceptional_var.expect("blow-up chart");
    let d = chart.overlap_with(1).expect("plane charts overlap").denominator_var;
    let solver = SectionSolver { charts, m, test: GluingTest::new(&charts[0], u, d)? };
    let (previous, _) = solver.solve(degree_bound - 1)?;
    let (ideal, section_count) = solver.solve(degree_bound)?;
    let stable = ideal.equals(&previous);
    Ok(SectionImage { ideal, previous, stable, degree_bound, section_count })
}

#[cfg(test)]
mod tests {
    use super::super::{build_modification, pullback, torsion_free_pullback, ModificationKind};
    use super::*;
    use crate::modules::presentation_of_ideal;

    fn plane() -> Modification {
        build_modification(ModificationKind::BlowupOrigin { n: 2 }).unwrap()
    }

    fn cubes(m: &Modification) -> Presentation {
        let g: Vec<Polynomial> = ["x^3", "y^3"].iter().map(|s| m.base.parse_poly(s).unwrap()).collect();
        presentation_of_ideal(&m.base, &g).unwrap()
    }

    #[test]
    fn pullback_sections_of_cube_ideal() {
        let m = plane();
        let charts = pullback(&cubes(&m), &m).unwrap();
        let s = truncated_global_sections(&charts, &m, 6).unwrap();
        assert!(s.stable);
        assert!(s.ideal.equals(&Ideal::parse(&m.base, "x^3, x^2*y^2, y^3").unwrap()), "{}", s.ideal);
    }

    #[test]
    fn torsion_free_sections_match_pushforward() {
        let m = plane();
        let charts: Vec<Presentation> =
            torsion_free_pullback(&cubes(&m), &m).unwrap().into_iter().map(|c| c.presentation).collect();
        let s = truncated_global_sections(&charts, &m, 6).unwrap();
        assert!(s.stable);
        assert!(s.ideal.equals(&Ideal::parse(&m.base, "x^3, x^2*y, x*y^2, y^3").unwrap()));
    }

    #[test]
    fn structure_sheaf_sections() {
        let m = plane();
        let o = Presentation::free(&m.base, 1).with_values(vec![m.base.one()]).unwrap();
        let s = truncated_global_sections(&pullback(&o, &m).unwrap(), &m, 3).unwrap();
        assert!(s.ideal.is_unit() && s.stable);
    }

    #[test]
    fn monotone_in_the_bound() {
        let m = plane();
        let charts = pullback(&cubes(&m), &m).unwrap();
        let mut last: Option<Ideal> = None;
        for d in 1..=4 {
            let s = truncated_global_sections(&charts, &m, d).unwrap();
            if let Some(prev) = &last {
                assert!(prev.is_subset(&s.ideal));
            }
            last = Some(s.ideal);
        }
    }

    #[test]
    fn rejects_other_modifications() {
        let m = build_modification(ModificationKind::BlowupOrigin { n: 3 }).unwrap();
        assert!(matches!(truncated_global_sections(&[], &m, 3), Err(Error::UnsupportedCenter(_))));
    }
}

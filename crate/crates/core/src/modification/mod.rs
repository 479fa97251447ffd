//! Blow-ups and finite maps.
//!
//! A modification is a list of affine charts, each a polynomial ring with a map from the
//! base. Blow-up charts carry a principal exceptional ideal `(u)` and rational gluing
//! data to every other chart. Projective coordinates never appear.

mod chain;
mod finite;
mod sections;

use serde::Serialize;

pub use chain::{verify_injection_chain, ChainInput, ChainReport, InclusionCheck};
pub use finite::{finiteness_basis, pushforward_finite};
pub use sections::{truncated_global_sections, SectionImage};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::modules::{minors, torsion_free_quotient, Presentation};
use crate::groebner::{syzygy_vectors, Submodule};
use crate::poly::{CoordinateRing, MonomialOrder, Polynomial, RingMap};

#[derive(Clone, Debug)]
pub enum ModificationKind {
    /// Blow-up of `ℚ^n` at the origin.
    BlowupOrigin { n: usize },
    /// Blow-up of `ℚ^n` along `x_1 = .. = x_s = 0`.
    BlowupCoordinateSubspace { n: usize, s: usize },
    /// `Spec B → Spec A` for a finite `map: A → B`; `basis` generates `B` as an `A`-module.
    FiniteMap { map: RingMap, basis: Vec<Polynomial> },
}

/// Chart `j` coordinates written over chart `i`: variable `k` of chart `j` is
/// `numerators[k] / d^exponents[k]`, with `d` the variable `denominator_var` of chart `i`.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub chart: usize,
    pub denominator_var: usize,
    pub numerators: Vec<Polynomial>,
    pub exponents: Vec<u32>,
}

impl Overlap {
    /// Rewrites `f` from chart `self.chart` as `numerator / d^e`, returning `(numerator, e)`.
    pub fn transport(&self, f: &Polynomial) -> (Polynomial, u32) {
        let nvars = self.numerators.first().map_or(0, |p| p.nvars());
        let d = Polynomial::var(nvars, self.denominator_var);
        let shift = |exps: &[u32]| -> u32 { exps.iter().zip(&self.exponents).map(|(a, e)| a * e).sum() };
        let e = f.terms().map(|(m, _)| shift(m.exponents())).max().unwrap_or(0);
        let mut acc = Polynomial::zero(nvars);
        for (m, c) in f.terms() {
            let mut t = Polynomial::constant(nvars, c.clone());
            for (k, &a) in m.exponents().iter().enumerate() {
                if a > 0 {
                    t = &t * &self.numerators[k].pow(a);
                }
            }
            acc = &acc + &(&t * &d.pow(e - shift(m.exponents())));
        }
        (acc, e)
    }
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub ring: CoordinateRing,
    /// Base coordinates in terms of chart coordinates.
    pub to_base: RingMap,
    /// `(u)` on blow-up charts; the zero ideal for finite maps.
    pub exceptional: Ideal,
    pub exceptional_var: Option<usize>,
    pub overlaps: Vec<Overlap>,
}

impl Chart {
    pub fn overlap_with(&self, chart: usize) -> Option<&Overlap> {
        self.overlaps.iter().find(|o| o.chart == chart)
    }
}

#[derive(Clone, Debug)]
pub struct Modification {
    pub kind: ModificationKind,
    pub base: CoordinateRing,
    pub charts: Vec<Chart>,
}

impl Modification {
    pub fn is_blowup(&self) -> bool {
        !matches!(self.kind, ModificationKind::FiniteMap { .. })
    }

    /// `(n, s)` for blow-ups.
    pub fn center(&self) -> Option<(usize, usize)> {
        match self.kind {
            ModificationKind::BlowupOrigin { n } => Some((n, n)),
            ModificationKind::BlowupCoordinateSubspace { n, s } => Some((n, s)),
            ModificationKind::FiniteMap { .. } => None,
        }
    }

    pub fn is_plane_origin_blowup(&self) -> bool {
        self.center() == Some((2, 2))
    }
}

/// Per-chart multiplicity of the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorOnBlowup {
    pub multiplicities: Vec<u32>,
}

impl DivisorOnBlowup {
    /// The common multiplicity when all charts agree.
    pub fn uniform(&self) -> Option<u32> {
        let first = *self.multiplicities.first()?;
        self.multiplicities.iter().all(|&m| m == first).then_some(first)
    }
}

/// `x, y, z` up to three variables, `x1..xn` beyond.
pub fn base_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn chart_names(n: usize, s: usize, i: usize) -> Vec<String> {
    let base = base_names(n);
    (0..n)
        .map(|k| {
            if k == i || k >= s {
                base[k].clone()
            } else if n == 2 {
                // the plane keeps the classical (x, t) and (s, y) charts
                if i == 0 { "t".to_string() } else { "s".to_string() }
            } else {
                format!("t{}", k + 1)
            }
        })
        .collect()
}

fn blowup(kind: ModificationKind, n: usize, s: usize) -> Result<Modification> {
    if n == 0 {
        return Err(Error::UnsupportedCenter("ambient dimension must be at least 1".into()));
    }
    if s == 0 || s > n {
        return Err(Error::UnsupportedCenter(format!("center codimension {s} outside 1..={n}")));
    }
    let base = CoordinateRing::polynomial(&base_names(n));
    let mut charts = Vec::with_capacity(s);
    for i in 0..s {
        let ring = CoordinateRing::polynomial(&chart_names(n, s, i));
        let u = ring.gen(i);
        let images = (0..n)
            .map(|k| match k {
                _ if k == i || k >= s => ring.gen(k),
                _ => &u * &ring.gen(k),
            })
            .collect();
        let to_base = RingMap::new(base.clone(), ring.clone(), images)?;
        let overlaps = (0..s)
            .filter(|&j| j != i)
            .map(|j| {
                let mut numerators = Vec::with_capacity(n);
                let mut exponents = Vec::with_capacity(n);
                for k in 0..n {
                    let (num, e) = if k == j {
                        (&u * &ring.gen(j), 0)
                    } else if k == i {
                        (ring.one(), 1)
                    } else if k < s {
                        (ring.gen(k), 1)
                    } else {
                        (ring.gen(k), 0)
                    };
                    numerators.push(num);
                    exponents.push(e);
                }
                Overlap { chart: j, denominator_var: j, numerators, exponents }
            })
            .collect();
        let exceptional = Ideal::principal(&ring, u)?;
        charts.push(Chart { ring, to_base, exceptional, exceptional_var: Some(i), overlaps });
    }
    Ok(Modification { kind, base, charts })
}

/// Explicit charts for the supported kinds; a finite map is checked for a valid module
/// basis.
pub fn build_modification(kind: ModificationKind) -> Result<Modification> {
    match &kind {
        ModificationKind::BlowupOrigin { n } => {
            let n = *n;
            blowup(kind, n, n)
        }
        ModificationKind::BlowupCoordinateSubspace { n, s } => {
            let (n, s) = (*n, *s);
            blowup(kind, n, s)
        }
        ModificationKind::FiniteMap { map, basis } => {
            let target = map.target().clone();
            finite::check_basis(map, basis)?;
            let chart = Chart {
                ring: target.clone(),
                to_base: map.clone(),
                exceptional: Ideal::zero(&target),
                exceptional_var: None,
                overlaps: Vec::new(),
            };
            Ok(Modification { base: map.source().clone(), charts: vec![chart], kind })
        }
    }
}

fn check_base(p: &Presentation, m: &Modification) -> Result<()> {
    if p.ring() != &m.base {
        return Err(Error::InvalidArgument("presentation is not over the base of the modification".into()));
    }
    Ok(())
}

/// `π*P` on every chart: the presentation matrix with each entry pulled back.
pub fn pullback(p: &Presentation, m: &Modification) -> Result<Vec<Presentation>> {
    check_base(p, m)?;
    m.charts.iter().map(|c| p.map_ring(&c.to_base)).collect()
}

/// The torsion-free pullback on one chart.
#[derive(Clone, Debug)]
pub struct ChartTransform {
    pub presentation: Presentation,
    /// For ideal input: the ideal generated by the pulled-back generators, which the
    /// torsion-free quotient is checked to present.
    pub transform_ideal: Option<Ideal>,
}

/// `π^T P = π*P / torsion` on every chart.
pub fn torsion_free_pullback(p: &Presentation, m: &Modification) -> Result<Vec<ChartTransform>> {
    pullback(p, m)?
        .into_iter()
        .map(|q| {
            let quotient = torsion_free_quotient(&q)?;
            let transform_ideal = match quotient.values() {
                None => None,
                Some(values) => {
                    let ring = quotient.ring();
                    let cols: Vec<Vec<Polynomial>> = values.iter().map(|v| vec![v.clone()]).collect();
                    let kernel = Submodule::new(ring, values.len(), syzygy_vectors(ring, &cols, 1))?;
                    if !kernel.equals(&quotient.relation_module()) {
                        return Err(Error::Incompatible(
                            "torsion-free pullback does not present the transform ideal".into(),
                        ));
                    }
                    Some(Ideal::new(ring, values.to_vec())?.minimalized())
                }
            };
            Ok(ChartTransform { presentation: quotient, transform_ideal })
        })
        .collect()
}

/// `φ^{-1}(K)`: eliminate the target variables from `K + (X_i − φ(X_i))` in the joint ring.
pub fn contraction(k: &Ideal, phi: &RingMap) -> Result<Ideal> {
    if k.ring() != phi.target() {
        return Err(Error::InvalidArgument("ideal is not over the target of the map".into()));
    }
    let (source, target) = (phi.source(), phi.target());
    let (nt, ns) = (target.nvars(), source.nvars());
    let drop: Vec<usize> = (0..nt).collect();
    let mask: Vec<bool> = (0..nt + ns).map(|v| v < nt).collect();
    let joint = target.adjoin(&target.fresh_names("w", ns), MonomialOrder::eliminating(&mask))?;
    let mut gens: Vec<Polynomial> = k.generators().iter().map(|g| g.extend(ns)).collect();
    for (i, img) in phi.images().iter().enumerate() {
        gens.push(&joint.gen(nt + i) - &img.extend(ns));
    }
    let kept: Vec<usize> = (nt..nt + ns).collect();
    let out: Vec<Polynomial> = Ideal::new(&joint, gens)?
        .eliminate(&drop)
        .generators()
        .iter()
        .filter_map(|g| g.restrict(&kept))
        .collect();
    Ok(Ideal::new(source, out)?.minimalized())
}

/// Checks that the chart ideals agree on every overlap: `K_j`, transported, lies in
/// `(K_i : d^∞)` and conversely.
pub fn check_overlap_compatibility(ideals: &[Ideal], m: &Modification) -> Result<()> {
    for (i, chart) in m.charts.iter().enumerate() {
        for o in &chart.overlaps {
            let d = chart.ring.gen(o.denominator_var);
            let local = ideals[i].saturation_only(&d);
            for g in ideals[o.chart].generators() {
                let (num, _) = o.transport(g);
                if !local.contains(&num) {
                    return Err(Error::Incompatible(format!(
                        "generator {} of chart {} is not in chart {} on the overlap",
                        m.charts[o.chart].ring.fmt_poly(g),
                        o.chart + 1,
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Sections of an ideal sheaf given chart by chart: the intersection of the contractions.
pub fn pushforward_ideal(ideals: &[Ideal], m: &Modification) -> Result<Ideal> {
    if ideals.len() != m.charts.len() {
        return Err(Error::InvalidArgument(format!(
            "{} chart ideals for {} charts",
            ideals.len(),
            m.charts.len()
        )));
    }
    for (k, c) in ideals.iter().zip(&m.charts) {
        if k.ring() != &c.ring {
            return Err(Error::InvalidArgument("chart ideal over the wrong ring".into()));
        }
    }
    check_overlap_compatibility(ideals, m)?;
    let mut acc = Ideal::unit(&m.base);
    for (k, c) in ideals.iter().zip(&m.charts) {
        acc = acc.intersect(&contraction(k, &c.to_base)?);
    }
    Ok(acc.minimalized())
}

/// Determinant of the Jacobian of `to_base` on one chart, up to a nonzero scalar.
pub fn jacobian_determinant(chart: &Chart) -> Polynomial {
    let n = chart.ring.nvars();
    let rows: Vec<Vec<Polynomial>> =
        chart.to_base.images().iter().map(|f| (0..n).map(|v| f.derivative(v)).collect()).collect();
    minors(&rows, rows.len().min(n)).pop().unwrap_or_else(|| chart.ring.zero())
}

/// Vanishing order of the Jacobian determinant along the exceptional divisor, per chart.
pub fn canonical_multiplicity(m: &Modification) -> Result<DivisorOnBlowup> {
    if !m.is_blowup() {
        return Err(Error::NotABlowup);
    }
    let multiplicities: Vec<u32> = m
        .charts
        .iter()
        .map(|c| jacobian_determinant(c).order_in(c.exceptional_var.expect("blow-up charts carry u")))
        .collect();
    let divisor = DivisorOnBlowup { multiplicities };
    if divisor.uniform().is_none() {
        return Err(Error::Incompatible("exceptional multiplicities differ between charts".into()));
    }
    Ok(divisor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::presentation_of_ideal;

    fn plane() -> Modification {
        build_modification(ModificationKind::BlowupOrigin { n: 2 }).unwrap()
    }

    fn ideal_presentation(r: &CoordinateRing, gens: &[&str]) -> Presentation {
        let g: Vec<Polynomial> = gens.iter().map(|s| r.parse_poly(s).unwrap()).collect();
        presentation_of_ideal(r, &g).unwrap()
    }

    #[test]
    fn plane_charts() {
        let m = plane();
        assert_eq!(m.charts.len(), 2);
        let (c1, c2) = (&m.charts[0], &m.charts[1]);
        assert_eq!(c1.ring.var_names(), ["x", "t"]);
        assert_eq!(c2.ring.var_names(), ["s", "y"]);
        let img: Vec<String> = c1.to_base.images().iter().map(|p| c1.ring.fmt_poly(p)).collect();
        assert_eq!(img, ["x", "x*t"]);
        let img: Vec<String> = c2.to_base.images().iter().map(|p| c2.ring.fmt_poly(p)).collect();
        assert_eq!(img, ["s*y", "y"]);
        assert!(c1.exceptional.equals(&Ideal::parse(&c1.ring, "x").unwrap()));
        assert!(c2.exceptional.equals(&Ideal::parse(&c2.ring, "y").unwrap()));
        // s = 1/t
        let o = c1.overlap_with(1).unwrap();
        let (num, e) = o.transport(&c2.ring.parse_poly("s").unwrap());
        assert_eq!((c1.ring.fmt_poly(&num), e), ("1".to_string(), 1));
    }

    #[test]
    fn overlaps_are_inverse() {
        for kind in [
            ModificationKind::BlowupOrigin { n: 2 },
            ModificationKind::BlowupOrigin { n: 3 },
            ModificationKind::BlowupCoordinateSubspace { n: 3, s: 2 },
        ] {
            let m = build_modification(kind).unwrap();
            for (i, ci) in m.charts.iter().enumerate() {
                for o in &ci.overlaps {
                    let cj = &m.charts[o.chart];
                    let d = ci.ring.gen(o.denominator_var);
                    for (bi, bj) in ci.to_base.images().iter().zip(cj.to_base.images()) {
                        let (num, e) = o.transport(bj);
                        assert_eq!(num, bi * &d.pow(e), "chart {i} vs {}", o.chart);
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_centers() {
        assert!(matches!(build_modification(ModificationKind::BlowupOrigin { n: 0 }), Err(Error::UnsupportedCenter(_))));
        assert!(matches!(
            build_modification(ModificationKind::BlowupCoordinateSubspace { n: 2, s: 3 }),
            Err(Error::UnsupportedCenter(_))
        ));
    }

    #[test]
    fn line_blowup_is_one_chart() {
        let m = build_modification(ModificationKind::BlowupOrigin { n: 1 }).unwrap();
        assert_eq!(m.charts.len(), 1);
        let c = &m.charts[0];
        assert_eq!(c.to_base.images(), &[c.ring.gen(0)]);
        assert!(c.exceptional.equals(&Ideal::parse(&c.ring, "x").unwrap()));
    }

    #[test]
    fn pullback_of_cube_ideal() {
        let m = plane();
        let p = ideal_presentation(&m.base, &["x^3", "y^3"]);
        let charts = pullback(&p, &m).unwrap();
        let c1 = &charts[0];
        let r = c1.ring();
        let expected = Submodule::new(r, 2, vec![vec![r.parse_poly("x^3*t^3").unwrap(), r.parse_poly("-x^3").unwrap()]])
            .unwrap();
        assert!(c1.relation_module().equals(&expected));
        let free = pullback(&Presentation::free(&m.base, 1), &m).unwrap();
        assert!(free.iter().all(|q| q.is_free() && q.num_generators() == 1));
    }

    #[test]
    fn torsion_free_pullback_of_ideals() {
        let m = plane();
        let t = torsion_free_pullback(&ideal_presentation(&m.base, &["x", "y"]), &m).unwrap();
        for (ct, c) in t.iter().zip(&m.charts) {
            assert!(ct.transform_ideal.as_ref().unwrap().equals(&c.exceptional));
        }
        let t = torsion_free_pullback(&ideal_presentation(&m.base, &["x^3", "y^3"]), &m).unwrap();
        let r1 = &m.charts[0].ring;
        let r2 = &m.charts[1].ring;
        assert!(t[0].transform_ideal.as_ref().unwrap().equals(&Ideal::parse(r1, "x^3").unwrap()));
        assert!(t[1].transform_ideal.as_ref().unwrap().equals(&Ideal::parse(r2, "y^3").unwrap()));
    }

    #[test]
    fn contractions() {
        let m = plane();
        let c1 = &m.charts[0];
        let k = Ideal::parse(&c1.ring, "x").unwrap();
        assert!(contraction(&k, &c1.to_base).unwrap().equals(&Ideal::parse(&m.base, "x, y").unwrap()));
        let k3 = Ideal::parse(&c1.ring, "x^3").unwrap();
        let all_cubes = Ideal::parse(&m.base, "x^3, x^2*y, x*y^2, y^3").unwrap();
        assert!(contraction(&k3, &c1.to_base).unwrap().equals(&all_cubes));
        assert!(contraction(&Ideal::unit(&c1.ring), &c1.to_base).unwrap().is_unit());
    }

    #[test]
    fn pushforwards() {
        let m = plane();
        let (r1, r2) = (&m.charts[0].ring, &m.charts[1].ring);
        let e = [Ideal::parse(r1, "x").unwrap(), Ideal::parse(r2, "y").unwrap()];
        assert!(pushforward_ideal(&e, &m).unwrap().equals(&Ideal::parse(&m.base, "x, y").unwrap()));
        let cubes = [Ideal::parse(r1, "x^3").unwrap(), Ideal::parse(r2, "y^3").unwrap()];
        let out = pushforward_ideal(&cubes, &m).unwrap();
        assert!(out.equals(&Ideal::parse(&m.base, "x^3, x^2*y, x*y^2, y^3").unwrap()));
        let units = [Ideal::unit(r1), Ideal::unit(r2)];
        assert!(pushforward_ideal(&units, &m).unwrap().is_unit());
        let bad = [Ideal::parse(r1, "x").unwrap(), Ideal::parse(r2, "y^2").unwrap()];
        assert!(matches!(pushforward_ideal(&bad, &m), Err(Error::Incompatible(_))));
    }

    #[test]
    fn canonical_multiplicities() {
        assert_eq!(canonical_multiplicity(&plane()).unwrap().multiplicities, vec![1, 1]);
        let m3 = build_modification(ModificationKind::BlowupOrigin { n: 3 }).unwrap();
        assert_eq!(canonical_multiplicity(&m3).unwrap().multiplicities, vec![2, 2, 2]);
        let div = build_modification(ModificationKind::BlowupCoordinateSubspace { n: 3, s: 1 }).unwrap();
        assert_eq!(canonical_multiplicity(&div).unwrap().multiplicities, vec![0]);
        let m32 = build_modification(ModificationKind::BlowupCoordinateSubspace { n: 3, s: 2 }).unwrap();
        assert_eq!(canonical_multiplicity(&m32).unwrap().uniform(), Some(1));
    }
}

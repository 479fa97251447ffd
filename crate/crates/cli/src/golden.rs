//! The golden suite behind `verify-paper`: every anchored example, recomputed.

use std::time::Instant;

use rayon::prelude::*;
use sheaf_forge::linspace::{
    is_normal_hypersurface, linear_space_ideal, nonlinear_witness, pc_is_linear, pc_saturating_ideal,
    primary_component, reducedness_witness,
};
use sheaf_forge::modification::{
    build_modification, canonical_multiplicity, pullback, pushforward_finite, pushforward_ideal,
    torsion_free_pullback, truncated_global_sections, verify_injection_chain, ChainInput, Modification,
    ModificationKind,
};
use sheaf_forge::modules::{
    classify_sheaf, min_generators_at, presentation_of_ideal, tensor_presentation, torsion_free_quotient,
    torsion_submodule, ModuleMap,
};
use sheaf_forge::{CoordinateRing, Ideal, Polynomial, Presentation, Rational, Result, RingMap};

use crate::report::{CheckRecord, Report, Status};

/// Degree bound used for the pullback sections of the blown-up plane.
pub const SECTION_DEGREE_BOUND: u32 = 6;

pub struct Outcome {
    pub status: Status,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { status: Status::Pass, detail: detail.into(), counterexample: None }
    }

    fn fail(detail: impl Into<String>, counterexample: Option<String>) -> Self {
        Outcome { status: Status::Fail, detail: detail.into(), counterexample }
    }

    fn verdict(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            Self::fail(detail, None)
        }
    }
}

pub struct GoldenCheck {
    pub id: &'static str,
    /// Location label of the statement being reproduced.
    pub anchor: &'static str,
    pub run: fn() -> Result<Outcome>,
}

pub fn checks() -> Vec<GoldenCheck> {
    vec![
        GoldenCheck { id: "rem-3.3/generators", anchor: "Rem 3.3", run: staircase_generators },
        GoldenCheck { id: "rem-3.3/linear-space", anchor: "Rem 3.3", run: staircase_linear_space },
        GoldenCheck { id: "rem-3.3/reducedness", anchor: "Rem 3.3", run: staircase_reducedness },
        GoldenCheck { id: "rem-3.3/primary-component", anchor: "Rem 3.3", run: staircase_primary_component },
        GoldenCheck { id: "rem-3.3/classify", anchor: "Rem 3.3", run: staircase_classify },
        GoldenCheck { id: "thm-1.2/maximal-ideal", anchor: "Thm 1.2", run: maximal_ideal_classify },
        GoldenCheck { id: "rem-4.2/pullback-sections", anchor: "Rem 4.2", run: cube_pullback_sections },
        GoldenCheck { id: "rem-4.2/torsion-free-image", anchor: "Rem 4.2", run: cube_torsion_free_image },
        GoldenCheck { id: "rem-4.2/chain", anchor: "Rem 4.2", run: cube_chain },
        GoldenCheck { id: "rem-4.2/cusp-torsion", anchor: "Rem 4.2", run: cusp_torsion },
        GoldenCheck { id: "rem-4.2/cusp-normalization", anchor: "Rem 4.2", run: cusp_normalization_image },
        GoldenCheck { id: "lem-7.2/exceptional-ideal", anchor: "Lem 7.2", run: maximal_ideal_exceptional },
        GoldenCheck { id: "eq-7.3/direct-image", anchor: "Eq. 7.3", run: maximal_ideal_direct_image },
        GoldenCheck { id: "rem-5.2/top-forms-divisor", anchor: "Rem 5.2", run: top_forms_divisor },
        GoldenCheck { id: "canonical/n2", anchor: "§8", run: canonical_n2 },
        GoldenCheck { id: "canonical/n3", anchor: "§8", run: canonical_n3 },
        GoldenCheck { id: "lem-8.2/tensor-torsion", anchor: "Lem 8.2", run: tensor_torsion },
        GoldenCheck { id: "lem-8.2/tensor-compatibility", anchor: "Lem 8.2", run: tensor_compatibility },
        GoldenCheck { id: "sec-6/mono-epi", anchor: "§6", run: mono_epi },
        GoldenCheck { id: "sec-6/residue-field", anchor: "§6", run: residue_field },
    ]
}

/// Checks whose id starts with `prefix` (all of them for `None`).
pub fn select(only: Option<&str>) -> Vec<GoldenCheck> {
    checks().into_iter().filter(|c| only.is_none_or(|p| c.id.starts_with(p))).collect()
}

pub fn run_check(c: &GoldenCheck) -> CheckRecord {
    let start = Instant::now();
    let outcome = (c.run)().unwrap_or_else(|e| Outcome::fail(format!("error: {e}"), None));
    CheckRecord {
        id: c.id.to_string(),
        anchor: c.anchor.to_string(),
        status: outcome.status,
        detail: outcome.detail,
        counterexample: outcome.counterexample,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the selected checks on the rayon pool; the report is ordered by anchor and id.
pub fn verify(only: Option<&str>) -> Report {
    let start = Instant::now();
    let selected = select(only);
    let records: Vec<CheckRecord> = selected.par_iter().map(run_check).collect();
    let command = match only {
        Some(p) => format!("verify-paper --only {p}"),
        None => "verify-paper".to_string(),
    };
    Report::new(command, records, start.elapsed().as_millis() as u64)
}

fn plane() -> Result<Modification> {
    build_modification(ModificationKind::BlowupOrigin { n: 2 })
}

fn xy() -> CoordinateRing {
    CoordinateRing::polynomial(&["x", "y"])
}

fn ideal_presentation(r: &CoordinateRing, gens: &[&str]) -> Result<Presentation> {
    let g = gens.iter().map(|s| r.parse_poly(s)).collect::<Result<Vec<Polynomial>>>()?;
    presentation_of_ideal(r, &g)
}

fn origin(n: usize) -> Vec<Rational> {
    vec![Rational::from_integer(0.into()); n]
}

/// Mutual membership, reporting the first generator on either side that is missing.
fn same_ideal(computed: &Ideal, expected: &Ideal) -> Outcome {
    let detail = format!("computed {computed}, expected {expected}");
    if let Some(g) = expected.first_outside(computed) {
        return Outcome::fail(detail, Some(format!("{} ∉ computed", expected.ring().fmt_poly(&g))));
    }
    if let Some(g) = computed.first_outside(expected) {
        return Outcome::fail(detail, Some(format!("{} ∉ expected", computed.ring().fmt_poly(&g))));
    }
    Outcome::pass(detail)
}

fn staircase() -> Result<Presentation> {
    ideal_presentation(&xy(), &["x^2", "x*y^2", "y^4"])
}

fn staircase_generators() -> Result<Outcome> {
    let p = staircase()?;
    let b = min_generators_at(&p, &origin(2))?;
    let c = classify_sheaf(&p, &origin(2))?;
    Ok(Outcome::verdict(
        b == 3 && c.corank_at_point == 2,
        format!("minimal generators at origin {b}, corank {}", c.corank_at_point),
    ))
}

fn staircase_linear_space() -> Result<Outcome> {
    let l = linear_space_ideal(&staircase()?)?;
    let expected = Ideal::parse(&l.joint_ring, "y^2*z1 - x*z2, y^2*z2 - x*z3")?;
    Ok(same_ideal(&l.ideal, &expected))
}

fn staircase_reducedness() -> Result<Outcome> {
    let l = linear_space_ideal(&staircase()?)?;
    let g = l.joint_ring.parse_poly("y*(z2^2 - z1*z3)")?;
    let v = reducedness_witness(&l.ideal, &g, 2);
    Ok(Outcome::verdict(
        v.confirmed,
        format!("g ∈ J: {}, g^2 ∈ J: {}", v.g_in_ideal, v.power_in_ideal),
    ))
}

fn staircase_primary_component() -> Result<Outcome> {
    let p = staircase()?;
    let l = linear_space_ideal(&p)?;
    let pc = primary_component(&l, &pc_saturating_ideal(&p))?;
    let expected = Ideal::parse(&l.joint_ring, "y^2*z1 - x*z2, y^2*z2 - x*z3, z2^2 - z1*z3")?;
    let mut out = same_ideal(&pc.ideal, &expected);
    if out.status == Status::Pass {
        let linear = pc_is_linear(&pc);
        let witness = nonlinear_witness(&pc).map(|w| l.joint_ring.fmt_poly(&w));
        out = Outcome::verdict(
            !linear,
            format!("{}; linear: {linear}; nonlinear element {}", out.detail, witness.unwrap_or_default()),
        );
    }
    Ok(out)
}

fn staircase_classify() -> Result<Outcome> {
    let c = classify_sheaf(&staircase()?, &origin(2))?;
    Ok(Outcome::verdict(
        !c.thm12_hypotheses_hold && c.thm12_consistent.is_none() && c.sing_codim == 2 && c.corank_at_point == 2,
        format!("codim Sing {}, corank {}, hypotheses: {:?}", c.sing_codim, c.corank_at_point, c.hypothesis_failures),
    ))
}

fn maximal_ideal_classify() -> Result<Outcome> {
    let c = classify_sheaf(&ideal_presentation(&xy(), &["x", "y"])?, &origin(2))?;
    let fields = (c.rank, c.corank_at_point, c.sing_codim, c.is_torsion_free, c.hom_dim_le_1);
    Ok(Outcome::verdict(
        fields == (1, 1, 2, true, true) && c.thm12_consistent == Some(true),
        format!("(rank, corank, codim, torsion-free, hd≤1) = {fields:?}"),
    ))
}

fn cubes(m: &Modification) -> Result<Presentation> {
    ideal_presentation(&m.base, &["x^3", "y^3"])
}

fn cube_pullback_sections() -> Result<Outcome> {
    let m = plane()?;
    let s = truncated_global_sections(&pullback(&cubes(&m)?, &m)?, &m, SECTION_DEGREE_BOUND)?;
    let mut out = same_ideal(&s.ideal, &Ideal::parse(&m.base, "x^3, x^2*y^2, y^3")?);
    if !s.stable && out.status == Status::Pass {
        out.status = Status::Inconclusive;
        out.detail.push_str("; not stable at the degree bound");
    }
    Ok(out)
}

fn cube_torsion_free_image() -> Result<Outcome> {
    let m = plane()?;
    let charts: Vec<Ideal> =
        torsion_free_pullback(&cubes(&m)?, &m)?.into_iter().filter_map(|t| t.transform_ideal).collect();
    let pushed = pushforward_ideal(&charts, &m)?;
    Ok(same_ideal(&pushed, &Ideal::parse(&m.base, "x^3, x^2*y, x*y^2, y^3")?))
}

fn cube_chain() -> Result<Outcome> {
    let m = plane()?;
    let r = verify_injection_chain(&ChainInput::Sheaf(cubes(&m)?), &m, SECTION_DEGREE_BOUND)?;
    let witnesses: Vec<String> =
        r.inclusions.iter().map(|c| c.strictness_witness.clone().unwrap_or_else(|| "-".into())).collect();
    let strict = r.inclusions.iter().all(|c| c.strict());
    // the named witnesses: x²y² ∉ (x³, y³) and x²y ∉ (x³, x²y², y³)
    let base = &m.base;
    let s = Ideal::parse(base, "x^3, y^3")?;
    let mid = Ideal::parse(base, "x^3, x^2*y^2, y^3")?;
    let named = !s.contains(&base.parse_poly("x^2*y^2")?) && !mid.contains(&base.parse_poly("x^2*y")?);
    let counterexample = r.inclusions.iter().find_map(|c| c.counterexample.clone());
    let detail = format!("holds {}, strict {strict}, witnesses {}", r.holds, witnesses.join(", "));
    Ok(if r.holds && strict && named {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail, counterexample)
    })
}

fn cusp_normalization() -> Result<(Modification, Presentation)> {
    let cusp = CoordinateRing::parse("ring x, y | relations: x^3 - y^2 | domain")?;
    let line = CoordinateRing::polynomial(&["t"]);
    let map = RingMap::new(cusp.clone(), line.clone(), vec![line.parse_poly("t^2")?, line.parse_poly("t^3")?])?;
    let basis = vec![line.one(), line.parse_poly("t")?];
    let m = build_modification(ModificationKind::FiniteMap { map, basis })?;
    let p = |s: &str| cusp.parse_poly(s);
    let o_hat = Presentation::new(&cusp, 2, vec![vec![p("-y")?, p("x")?], vec![p("-x^2")?, p("y")?]])?;
    Ok((m, o_hat))
}

fn cusp_torsion() -> Result<Outcome> {
    let (m, o_hat) = cusp_normalization()?;
    let pushed = pushforward_finite(&pullback(&o_hat, &m)?.remove(0), &m)?;
    let t = torsion_submodule(&pushed)?;
    let origin = Ideal::parse(&m.base, "x, y")?;
    let supported = t.witnesses.iter().all(|w| origin.radical_contains(w));
    let witnesses: Vec<String> = t.witnesses.iter().map(|w| m.base.fmt_poly(w)).collect();
    Ok(Outcome::verdict(
        !t.is_zero() && supported,
        format!("{} torsion generators, witnesses [{}]", t.torsion_generators.len(), witnesses.join(", ")),
    ))
}

fn cusp_normalization_image() -> Result<Outcome> {
    let (m, o_hat) = cusp_normalization()?;
    let tf = torsion_free_quotient(&pullback(&o_hat, &m)?.remove(0))?;
    let pushed = pushforward_finite(&tf, &m)?;
    let torsion_free = torsion_submodule(&pushed)?.is_zero();
    let (min, _) = pushed.minimize();
    let same = min.num_generators() == 2 && min.relation_module().equals(&o_hat.relation_module());
    Ok(Outcome::verdict(
        torsion_free && same,
        format!("torsion-free {torsion_free}, minimal generators {}, relations match {same}", min.num_generators()),
    ))
}

fn maximal_ideal_exceptional() -> Result<Outcome> {
    let m = plane()?;
    let t = torsion_free_pullback(&ideal_presentation(&m.base, &["x", "y"])?, &m)?;
    for (i, (ct, chart)) in t.iter().zip(&m.charts).enumerate() {
        let k = ct.transform_ideal.as_ref().expect("ideal input");
        if !k.equals(&chart.exceptional) {
            return Ok(Outcome::fail(
                format!("chart {}: {k} differs from the exceptional ideal {}", i + 1, chart.exceptional),
                k.first_outside(&chart.exceptional).map(|g| chart.ring.fmt_poly(&g)),
            ));
        }
    }
    Ok(Outcome::pass("torsion-free pullback equals the exceptional ideal on both charts"))
}

fn maximal_ideal_direct_image() -> Result<Outcome> {
    let m = plane()?;
    let charts: Vec<Ideal> = m.charts.iter().map(|c| c.exceptional.clone()).collect();
    let pushed = pushforward_ideal(&charts, &m)?;
    let mut out = same_ideal(&pushed, &Ideal::parse(&m.base, "x, y")?);
    let l = linear_space_ideal(&ideal_presentation(&m.base, &["x", "y"])?)?;
    let normal = is_normal_hypersurface(&l.joint_ring, &l.joint_ring.parse_poly("y*z1 - x*z2")?)?.normal;
    if !normal {
        out = Outcome::fail(format!("{}; y*z1 - x*z2 not normal", out.detail), None);
    } else {
        out.detail.push_str("; y*z1 - x*z2 normal");
    }
    Ok(out)
}

fn top_forms_divisor() -> Result<Outcome> {
    let m = plane()?;
    let r = verify_injection_chain(&ChainInput::TopForms, &m, 1)?;
    let d = r.divisor.expect("top forms carry a divisor");
    Ok(Outcome::verdict(r.holds && d.multiplicities == vec![1, 1], format!("D multiplicities {:?}", d.multiplicities)))
}

fn canonical(n: usize, expected: u32) -> Result<Outcome> {
    let m = build_modification(ModificationKind::BlowupOrigin { n })?;
    let d = canonical_multiplicity(&m)?;
    Ok(Outcome::verdict(
        d.multiplicities.iter().all(|&k| k == expected),
        format!("n = {n}: multiplicities {:?}", d.multiplicities),
    ))
}

fn canonical_n2() -> Result<Outcome> {
    canonical(2, 1)
}

fn canonical_n3() -> Result<Outcome> {
    canonical(3, 2)
}

fn tensor_torsion() -> Result<Outcome> {
    let r = CoordinateRing::polynomial(&["z", "w"]);
    let t = tensor_presentation(&ideal_presentation(&r, &["z^2", "z*w"])?, &ideal_presentation(&r, &["w^2", "z*w"])?)?;
    let mut v = vec![r.zero(); 4];
    v[0] = r.one();
    v[3] = r.int(-1);
    let z = r.parse_poly("z")?;
    let nonzero = !t.is_zero_class(&v);
    let killed = t.is_zero_class(&v.iter().map(|c| c * &z).collect::<Vec<_>>());
    let tor = torsion_submodule(&t)?;
    let in_torsion = tor.quotient.is_zero_class(&v);
    Ok(Outcome::verdict(
        nonzero && killed && in_torsion,
        format!("class nonzero {nonzero}, killed by z {killed}, in torsion {in_torsion}"),
    ))
}

fn tensor_compatibility() -> Result<Outcome> {
    let m = plane()?;
    let max = ideal_presentation(&m.base, &["x", "y"])?;
    let whole = torsion_free_pullback(&tensor_presentation(&max, &max)?, &m)?;
    let factor = torsion_free_pullback(&max, &m)?;
    for (i, ((w, f), c)) in whole.iter().zip(&factor).zip(&m.charts).enumerate() {
        let prod = torsion_free_quotient(&tensor_presentation(&f.presentation, &f.presentation)?)?;
        let lhs = w.transform_ideal.as_ref().expect("ideal input");
        let rhs = Ideal::new(&c.ring, prod.values().expect("values carried").to_vec())?;
        let out = same_ideal(lhs, &rhs);
        if out.status != Status::Pass {
            return Ok(Outcome::fail(format!("chart {}: {}", i + 1, out.detail), out.counterexample));
        }
    }
    Ok(Outcome::pass("per-chart images agree for (x, y) ⊗ (x, y)"))
}

fn mono_epi() -> Result<Outcome> {
    let m = plane()?;
    let r = &m.base;
    let (x, y) = (r.parse_poly("x")?, r.parse_poly("y")?);
    let max = ideal_presentation(r, &["x", "y"])?;
    let incl = ModuleMap::new(max.clone(), Presentation::free(r, 1), vec![vec![x], vec![y]])?;
    let e = |i: usize| (0..2).map(|k| if k == i { r.one() } else { r.zero() }).collect::<Vec<_>>();
    let surj = ModuleMap::new(Presentation::free(r, 2), max, vec![e(0), e(1)])?;
    let mut verdicts = Vec::new();
    for c in &m.charts {
        verdicts.push(incl.map_ring(&c.to_base)?.torsion_free()?.is_injective());
        verdicts.push(surj.map_ring(&c.to_base)?.torsion_free()?.is_surjective());
    }
    let base_ok = incl.is_injective() && surj.is_surjective();
    Ok(Outcome::verdict(
        base_ok && verdicts.iter().all(|&v| v),
        format!("base mono/epi {base_ok}; chart verdicts {verdicts:?}"),
    ))
}

fn residue_field() -> Result<Outcome> {
    let m = plane()?;
    let r = &m.base;
    let residue = Presentation::from_rows(r, vec![vec![r.parse_poly("x")?, r.parse_poly("y")?]])?;
    let zero: Vec<bool> = torsion_free_pullback(&residue, &m)?.iter().map(|t| t.presentation.is_zero_module()).collect();
    Ok(Outcome::verdict(zero.iter().all(|&z| z), format!("zero on charts {zero:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_prefixed_by_anchor_family() {
        let all = checks();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn prefix_selection() {
        let sel = select(Some("rem-4.2"));
        assert_eq!(sel.len(), 5);
        assert!(sel.iter().all(|c| c.anchor == "Rem 4.2"));
        assert!(select(Some("nothing")).is_empty());
    }
}

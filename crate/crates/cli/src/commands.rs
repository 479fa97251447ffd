//! One function per subcommand. Each returns human-readable text, a JSON value and
//! whether its check (if any) held.

use serde_json::{json, Value};
use sheaf_forge::linspace::{linear_space_ideal, nonlinear_witness, pc_is_linear, pc_saturating_ideal, primary_component};
use sheaf_forge::modification::{
    build_modification, canonical_multiplicity, pullback, pushforward_ideal,
    torsion_free_pullback, verify_injection_chain, ChainInput, Modification, ModificationKind,
};
use sheaf_forge::modules::{classify_sheaf, parse_ideal_file, torsion_submodule, Presentation};
use sheaf_forge::poly::parse::parse_order;
use sheaf_forge::{Error, Ideal, Polynomial, Rational, Result};

pub struct Output {
    pub text: String,
    pub json: Value,
    /// False when the command ran a check and the check failed.
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn poly_strings(ideal: &Ideal, polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| ideal.ring().fmt_poly(p)).collect()
}

fn load_ideal(text: &str, order: Option<&str>) -> Result<Ideal> {
    let ideal = parse_ideal_file(text)?;
    match order {
        None => Ok(ideal),
        Some(o) => {
            let ring = ideal.ring().with_order(parse_order(o, ideal.ring().nvars())?)?;
            Ideal::new(&ring, ideal.generators().to_vec())
        }
    }
}

pub fn gb(text: &str, order: Option<&str>) -> Result<Output> {
    let ideal = load_ideal(text, order)?;
    let basis = poly_strings(&ideal, ideal.gb());
    let text = format!("order {}\n{}\n", ideal.ring().order(), basis.join("\n"));
    Ok(Output::new(text, json!({ "order": ideal.ring().order().to_string(), "basis": basis })))
}

pub fn member(text: &str, poly: &str, order: Option<&str>) -> Result<Output> {
    let ideal = load_ideal(text, order)?;
    let f = ideal.ring().parse_poly(poly)?;
    let nf = ideal.ring().fmt_poly(&ideal.normal_form(&f));
    let member = ideal.contains(&f);
    let text = format!("{}: {}\nnormal form {nf}\n", poly.trim(), if member { "member" } else { "not a member" });
    Ok(Output::new(text, json!({ "poly": poly.trim(), "member": member, "normal_form": nf })))
}

pub fn sat(text: &str, by: &str, order: Option<&str>) -> Result<Output> {
    let ideal = load_ideal(text, order)?;
    let f = ideal.ring().parse_poly(by)?;
    let (s, k) = ideal.saturate(&f)?;
    let gens = s.generator_strings();
    let text = format!("({} : ({})^∞) = {s}\nstabilized at exponent {k}\n", ideal, by.trim());
    Ok(Output::new(text, json!({ "saturation": gens, "exponent": k })))
}

pub fn parse_point(at: Option<&str>, nvars: usize) -> Result<Vec<Rational>> {
    let Some(at) = at else {
        return Ok(vec![Rational::from_integer(0.into()); nvars]);
    };
    let coords = at
        .split(',')
        .map(|c| c.trim().parse::<Rational>().map_err(|_| Error::InvalidArgument(format!("bad coordinate `{}`", c.trim()))))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != nvars {
        return Err(Error::VariableCount { expected: nvars, found: coords.len() });
    }
    Ok(coords)
}

pub fn classify(text: &str, at: Option<&str>) -> Result<Output> {
    let p = Presentation::parse(text)?;
    let point = parse_point(at, p.ring().nvars())?;
    let c = classify_sheaf(&p, &point)?;
    let mut s = format!(
        "rank {}\ncorank at point {}\nminimal generators at point {}\nsingular locus {} (codim {})\ntorsion-free {}\nhom-dim ≤ 1 {}\n",
        c.rank, c.corank_at_point, c.min_generators_at_point, c.singular_locus, c.sing_codim, c.is_torsion_free, c.hom_dim_le_1
    );
    match c.thm12_consistent {
        Some(v) => s.push_str(&format!("torsion-free ⇔ hom-dim ≤ 1: {v}\n")),
        None => s.push_str(&format!("equivalence not decided: {}\n", c.hypothesis_failures.join("; "))),
    }
    for w in &c.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    let ok = c.thm12_consistent != Some(false);
    let json = serde_json::to_value(&c).expect("report serializes");
    Ok(Output { text: s, json, ok })
}

pub fn torsion(text: &str) -> Result<Output> {
    let p = Presentation::parse(text)?;
    let t = torsion_submodule(&p)?;
    let summary = t.summary();
    let mut s = if t.is_zero() { "torsion-free\n".to_string() } else { "torsion generators:\n".to_string() };
    for (g, w) in summary.torsion_generators.iter().zip(&summary.witnesses) {
        s.push_str(&format!("  ({}) killed by {w}\n", g.join(", ")));
    }
    Ok(Output::new(s, serde_json::to_value(&summary).expect("summary serializes")))
}

pub fn linspace(text: &str) -> Result<Output> {
    let p = Presentation::parse(text)?;
    let l = linear_space_ideal(&p)?;
    let pc = primary_component(&l, &pc_saturating_ideal(&p))?;
    let linear = pc_is_linear(&pc);
    let witness = nonlinear_witness(&pc).map(|w| l.joint_ring.fmt_poly(&w));
    let mut s = format!("L(S) = V({})\nprimary component {}\nlinear {linear}\n", l.ideal, pc.ideal);
    if let Some(w) = &witness {
        s.push_str(&format!("nonlinear element {w}\n"));
    }
    let json = json!({
        "fiber_vars": l.fiber_vars,
        "ideal": l.ideal.generator_strings(),
        "primary_component": pc.ideal.generator_strings(),
        "linear": linear,
        "nonlinear_witness": witness,
    });
    Ok(Output::new(s, json))
}

pub fn modification(n: usize, center: &str, s: Option<usize>) -> Result<Modification> {
    let kind = match center {
        "origin" => ModificationKind::BlowupOrigin { n },
        "subspace" => ModificationKind::BlowupCoordinateSubspace { n, s: s.unwrap_or(n) },
        other => return Err(Error::InvalidArgument(format!("unknown center `{other}` (origin or subspace)"))),
    };
    build_modification(kind)
}

fn chart_label(m: &Modification, i: usize) -> String {
    format!("chart {} ({})", i + 1, m.charts[i].ring.var_names().join(", "))
}

pub fn blowup(m: &Modification, text: &str, op: &str, degree_bound: u32) -> Result<Output> {
    let p = Presentation::parse(text)?;
    let base = m.base.var_names().to_vec();
    if p.ring().var_names() != base.as_slice() {
        return Err(Error::InvalidArgument(format!("sheaf must live on the base ring with variables {}", base.join(", "))));
    }
    match op {
        "pullback" => {
            let charts = pullback(&p, m)?;
            let mut s = String::new();
            let mut js = Vec::new();
            for (i, c) in charts.iter().enumerate() {
                s.push_str(&format!("{}:\n{c}\n", chart_label(m, i)));
                js.push(json!({ "chart": i + 1, "relations": c.matrix_strings() }));
            }
            Ok(Output::new(s, json!({ "op": "pullback", "charts": js })))
        }
        "pT" => {
            let charts = torsion_free_pullback(&p, m)?;
            let mut s = String::new();
            let mut js = Vec::new();
            for (i, c) in charts.iter().enumerate() {
                s.push_str(&format!("{}:\n{}\n", chart_label(m, i), c.presentation));
                if let Some(k) = &c.transform_ideal {
                    s.push_str(&format!("  ideal {k}\n"));
                }
                js.push(json!({
                    "chart": i + 1,
                    "relations": c.presentation.matrix_strings(),
                    "ideal": c.transform_ideal.as_ref().map(|k| k.generator_strings()),
                }));
            }
            Ok(Output::new(s, json!({ "op": "pT", "charts": js })))
        }
        "pushforward" => {
            let charts = torsion_free_pullback(&p, m)?;
            let ideals: Vec<Ideal> = charts
                .into_iter()
                .map(|c| c.transform_ideal.ok_or_else(|| Error::InvalidArgument("pushforward needs an ideal sheaf".into())))
                .collect::<Result<_>>()?;
            let pushed = pushforward_ideal(&ideals, m)?;
            Ok(Output::new(
                format!("π_*π^T S = {pushed}\n"),
                json!({ "op": "pushforward", "ideal": pushed.generator_strings() }),
            ))
        }
        "chain" => {
            let r = verify_injection_chain(&ChainInput::Sheaf(p), m, degree_bound)?;
            let mut s = String::new();
            for c in &r.inclusions {
                let mark = if c.holds { "⊆" } else { "⊄" };
                s.push_str(&format!("{} {mark} {}\n", c.smaller, c.larger));
                if let Some(w) = &c.strictness_witness {
                    s.push_str(&format!("  strict: {w} ∉ smaller side\n"));
                }
                if let Some(w) = &c.counterexample {
                    s.push_str(&format!("  counterexample: {w}\n"));
                }
            }
            if let Some(d) = &r.divisor {
                s.push_str(&format!("divisor multiplicities {:?}\n", d.multiplicities));
            }
            for note in &r.notes {
                s.push_str(&format!("note: {note}\n"));
            }
            let mut out = Output::new(s, serde_json::to_value(&r).expect("chain report serializes"));
            out.ok = r.holds;
            Ok(out)
        }
        other => Err(Error::InvalidArgument(format!("unknown op `{other}` (pullback, pT, pushforward or chain)"))),
    }
}

pub fn canonical(m: &Modification) -> Result<Output> {
    let d = canonical_multiplicity(m)?;
    let mut s = String::new();
    for (i, k) in d.multiplicities.iter().enumerate() {
        s.push_str(&format!("{}: multiplicity {k}\n", chart_label(m, i)));
    }
    Ok(Output::new(s, serde_json::to_value(&d).expect("divisor serializes")))
}

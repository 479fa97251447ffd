use serde::Serialize;

use super::{
    check_base, jacobian_determinant, pullback, pushforward_ideal, torsion_free_pullback, truncated_global_sections,
    DivisorOnBlowup, Modification,
};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::modules::{is_torsion_free, presentation_of_ideal, Presentation};

/// What the chain is computed for.
#[derive(Clone, Debug)]
pub enum ChainInput {
    /// A torsion-free ideal sheaf on the base, with generator values.
    Sheaf(Presentation),
    /// Top-degree forms on the blow-up, whose direct image is the free module of top forms
    /// on the base.
    TopForms,
}

/// `smaller ⊆ larger`, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct InclusionCheck {
    pub smaller: String,
    pub larger: String,
    pub holds: bool,
    /// A generator of `smaller` outside `larger`.
    pub counterexample: Option<String>,
    /// A generator of `larger` outside `smaller`.
    pub strictness_witness: Option<String>,
}

impl InclusionCheck {
    fn new(smaller_name: &str, smaller: &Ideal, larger_name: &str, larger: &Ideal) -> Self {
        let fmt = |i: &Ideal, g: Option<crate::poly::Polynomial>| g.map(|g| i.ring().fmt_poly(&g));
        InclusionCheck {
            smaller: format!("{smaller_name} = {smaller}"),
            larger: format!("{larger_name} = {larger}"),
            holds: smaller.is_subset(larger),
            counterexample: fmt(smaller, smaller.first_outside(larger)),
            strictness_witness: fmt(larger, larger.first_outside(smaller)),
        }
    }

    pub fn strict(&self) -> bool {
        self.holds && self.strictness_witness.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub sheaf: Option<Ideal>,
    pub pullback_sections: Option<Ideal>,
    pub sections_stable: Option<bool>,
    pub torsion_free_pushforward: Option<Ideal>,
    pub inclusions: Vec<InclusionCheck>,
    /// `D` with `π^T π_* E = E(−D)` when the torsion-free pullback is invertible.
    pub divisor: Option<DivisorOnBlowup>,
    pub holds: bool,
    pub notes: Vec<String>,
}

/// Computes `S ⊆ π_*π*S ⊆ π_*π^T S` for an ideal sheaf, or the divisor comparing
/// `π^T π_*` of top forms with the top forms, and checks every inclusion by membership.
pub fn verify_injection_chain(input: &ChainInput, m: &Modification, degree_bound: u32) -> Result<ChainReport> {
    match input {
        ChainInput::Sheaf(p) => sheaf_chain(p, m, degree_bound),
        ChainInput::TopForms => top_forms(m),
    }
}

fn sheaf_chain(p: &Presentation, m: &Modification, degree_bound: u32) -> Result<ChainReport> {
    check_base(p, m)?;
    let Some(values) = p.values() else {
        return Err(Error::InvalidArgument("the chain is computed for ideal sheaves with generator values".into()));
    };
    if !is_torsion_free(p)? {
        return Err(Error::InvalidArgument("input sheaf has torsion".into()));
    }
    let mut notes = Vec::new();
    let sheaf = Ideal::new(&m.base, values.to_vec())?.minimalized();
    let transforms = torsion_free_pullback(p, m)?;
    let chart_ideals: Vec<Ideal> =
        transforms.iter().map(|t| t.transform_ideal.clone().expect("ideal input")).collect();
    let pushed = pushforward_ideal(&chart_ideals, m)?;

    let (sections, stable) = if m.is_plane_origin_blowup() {
        let s = truncated_global_sections(&pullback(p, m)?, m, degree_bound)?;
        if !s.stable {
            notes.push(format!("section image not stable at degree bound {degree_bound}"));
        }
        (Some(s.ideal), Some(s.stable))
    } else {
        notes.push("pullback sections are only computed on the blown-up plane".into());
        (None, None)
    };

    let mut inclusions = Vec::new();
    match &sections {
        Some(s) => {
            inclusions.push(InclusionCheck::new("S", &sheaf, "π_*π*S", s));
            inclusions.push(InclusionCheck::new("π_*π*S", s, "π_*π^T S", &pushed));
        }
        None => inclusions.push(InclusionCheck::new("S", &sheaf, "π_*π^T S", &pushed)),
    }

    let divisor = if m.is_blowup() && chart_ideals.iter().all(|k| k.generators().len() == 1) {
        let again = torsion_free_pullback(&presentation_of_ideal(&m.base, pushed.generators())?, m)?;
        let mut multiplicities = Vec::new();
        for ((before, after), chart) in chart_ideals.iter().zip(&again).zip(&m.charts) {
            let after = after.transform_ideal.as_ref().expect("ideal input");
            let u = chart.exceptional_var.expect("blow-up chart");
            let k = after.generators()[0].order_in(u).saturating_sub(before.generators()[0].order_in(u));
            let twisted = before.product(&Ideal::principal(&chart.ring, chart.ring.gen(u).pow(k))?);
            if !twisted.equals(after) {
                notes.push("torsion-free pullback of the direct image is not a twist by the exceptional divisor".into());
            }
            multiplicities.push(k);
        }
        Some(DivisorOnBlowup { multiplicities })
    } else {
        None
    };

    let holds = inclusions.iter().all(|c| c.holds);
    Ok(ChainReport {
        sheaf: Some(sheaf),
        pullback_sections: sections,
        sections_stable: stable,
        torsion_free_pushforward: Some(pushed),
        inclusions,
        divisor,
        holds,
        notes,
    })
}

/// On each chart the pulled-back base volume form is `det J · (chart volume form)`, so
/// `π^T π_* Ωⁿ` is the ideal `(det J)` times `Ωⁿ`.
fn top_forms(m: &Modification) -> Result<ChainReport> {
    if !m.is_blowup() {
        return Err(Error::NotABlowup);
    }
    let mut inclusions = Vec::new();
    let mut multiplicities = Vec::new();
    let mut notes = Vec::new();
    for (i, chart) in m.charts.iter().enumerate() {
        let det = jacobian_determinant(chart);
        let image = Ideal::principal(&chart.ring, det.clone())?;
        let u = chart.exceptional_var.expect("blow-up chart");
        let k = det.order_in(u);
        if !image.equals(&Ideal::principal(&chart.ring, chart.ring.gen(u).pow(k))?) {
            notes.push(format!("chart {}: Jacobian determinant is not a power of the exceptional coordinate", i + 1));
        }
        inclusions.push(InclusionCheck::new(
            &format!("π^Tπ_*Ωⁿ on chart {}", i + 1),
            &image,
            "Ωⁿ",
            &Ideal::unit(&chart.ring),
        ));
        multiplicities.push(k);
    }
    let holds = inclusions.iter().all(|c| c.holds) && notes.is_empty();
    Ok(ChainReport {
        sheaf: None,
        pullback_sections: None,
        sections_stable: None,
        torsion_free_pushforward: None,
        inclusions,
        divisor: Some(DivisorOnBlowup { multiplicities }),
        holds,
        notes,
    })
}

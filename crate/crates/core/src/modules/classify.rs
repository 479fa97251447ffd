use serde::Serialize;

use super::invariants::{fitting_ideal, generic_rank, min_generators_at};
use super::presentation::Presentation;
use super::resolution::free_resolution;
use super::torsion::{torsion_annihilator, torsion_submodule};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::poly::Rational;

/// The invariants entering the torsion-free / homological-dimension equivalence, and the
/// verdict on it.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub rank: usize,
    pub corank_at_point: usize,
    pub min_generators_at_point: usize,
    pub singular_locus: Ideal,
    pub sing_codim: i64,
    pub is_torsion_free: bool,
    pub hom_dim_le_1: bool,
    /// `Some(torsion-free ⇔ hom-dim ≤ 1)` when the hypotheses hold, `None` otherwise.
    pub thm12_consistent: Option<bool>,
    pub thm12_hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    pub point: Vec<String>,
    pub domain_asserted: bool,
    /// The singular locus was intersected with the torsion annihilator.
    pub torsion_adjusted_locus: bool,
    pub warnings: Vec<String>,
}

/// Computes rank, corank at `point`, singular locus, torsion-freeness and the homological
/// dimension bound, and checks the equivalence between the last two when the base is a
/// polynomial ring, the corank is at most 2 and the singular locus has codimension larger
/// than the corank.
pub fn classify_sheaf(p: &Presentation, point: &[Rational]) -> Result<ClassifyReport> {
    let ring = p.ring();
    let mut warnings = Vec::new();
    if !ring.domain_asserted() {
        warnings.push("ring relations not asserted prime; rank and torsion assume a domain".to_string());
    }
    let rank = generic_rank(p);
    let mingens = min_generators_at(p, point)?;
    let corank = mingens - rank;
    let torsion = torsion_submodule(p)?;
    let is_torsion_free = torsion.is_zero();
    let mut locus = fitting_ideal(p, rank);
    if !is_torsion_free {
        locus = locus.intersect(&torsion_annihilator(p, &torsion));
    }
    let sing_codim = locus.dimension().codim;
    let res = free_resolution(p, 1);
    warnings.extend(res.warnings.iter().filter(|w| !w.contains("length bound")).cloned());
    let hom_dim_le_1 = res.maps.len() <= 1;

    let mut failures = Vec::new();
    if corank > 2 {
        failures.push(format!("corank {corank} exceeds 2"));
    }
    if sing_codim <= corank as i64 {
        failures.push(format!(
            "singular locus has codimension {sing_codim}, not at least corank + 1 = {}",
            corank + 1
        ));
    }
    if ring.is_quotient() {
        failures.push("base ring has relations; factoriality is not certified".to_string());
    }
    let holds = failures.is_empty();
    Ok(ClassifyReport {
        rank,
        corank_at_point: corank,
        min_generators_at_point: mingens,
        singular_locus: locus.minimalized(),
        sing_codim,
        is_torsion_free,
        hom_dim_le_1,
        thm12_consistent: holds.then_some(is_torsion_free == hom_dim_le_1),
        thm12_hypotheses_hold: holds,
        hypothesis_failures: failures,
        point: point.iter().map(|c| c.to_string()).collect(),
        domain_asserted: ring.domain_asserted(),
        torsion_adjusted_locus: !is_torsion_free,
        warnings,
    })
}

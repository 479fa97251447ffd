//! Linear fiber spaces `L(S) ⊂ X × ℚ^b` of finitely presented modules.
//!
//! A presentation `coker(M: R^a → R^b)` defines `L(S)` by the fiberwise-linear forms
//! `h_j = Σ_i M_ij z_i`, one per relation column, in the joint ring `R[z_1..z_b]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::modules::{fitting_ideal, generic_rank, Presentation};
use crate::poly::{CoordinateRing, MonomialOrder, Polynomial};

/// The ideal of `L(S)` in the joint ring.
#[derive(Clone, Debug)]
pub struct LinearSpaceIdeal {
    pub base_ring: CoordinateRing,
    pub joint_ring: CoordinateRing,
    pub fiber_vars: Vec<String>,
    pub ideal: Ideal,
    pub source: Presentation,
}

/// The primary component: the closure of `L(S)` over the locus where `S` is locally free.
#[derive(Clone, Debug)]
pub struct PrimaryComponentIdeal {
    pub ideal: Ideal,
    /// The ideal (in the base ring) whose zero set was removed.
    pub saturating_ideal: Ideal,
    fiber_weights: Vec<u32>,
}

/// Outcome of a nilpotency check `g ∉ J`, `g^k ∈ J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducednessVerdict {
    pub confirmed: bool,
    pub g_in_ideal: bool,
    pub power_in_ideal: bool,
    pub power: u32,
}

/// Outcome of the Jacobian criterion on a hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    /// Codimension of the singular locus inside the hypersurface.
    pub singular_codim: i64,
    pub squarefree_asserted: bool,
}

impl LinearSpaceIdeal {
    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    /// Weights giving each fiber variable degree 1 and each base variable degree 0.
    pub fn fiber_weights(&self) -> Vec<u32> {
        fiber_weights(self.base_ring.nvars(), self.fiber_vars.len())
    }
}

impl PrimaryComponentIdeal {
    pub fn ring(&self) -> &CoordinateRing {
        self.ideal.ring()
    }

    pub fn fiber_weights(&self) -> &[u32] {
        &self.fiber_weights
    }
}

fn fiber_weights(n: usize, b: usize) -> Vec<u32> {
    (0..n + b).map(|i| u32::from(i >= n)).collect()
}

/// `L(S)`: generators `h_j = Σ_i M_ij z_i` over `R[z_1..z_b]`, ordered by fiber degree.
pub fn linear_space_ideal(p: &Presentation) -> Result<LinearSpaceIdeal> {
    let base = p.ring().clone();
    let n = base.nvars();
    let b = p.num_generators();
    let fiber_vars = base.fresh_names("z", b);
    let order = MonomialOrder::weighted(fiber_weights(n, b));
    let joint = base.adjoin(&fiber_vars, order)?;
    let positions: Vec<usize> = (0..n).collect();
    let mut gens = Vec::with_capacity(p.num_relations());
    for col in p.columns() {
        let mut h = joint.zero();
        for (i, m) in col.iter().enumerate() {
            h = &h + &(&m.embed(n + b, &positions) * &joint.gen(n + i));
        }
        debug_assert!(h.is_weighted_homogeneous(&fiber_weights(n, b)));
        gens.push(h);
    }
    let ideal = Ideal::new(&joint, gens)?;
    for g in ideal.generators() {
        assert_eq!(g.weighted_degree(&fiber_weights(n, b)), Some(1), "generators are fiberwise linear");
    }
    Ok(LinearSpaceIdeal { base_ring: base, joint_ring: joint, fiber_vars, ideal, source: p.clone() })
}

/// The ideal whose zero set is removed to form the primary component: `Fitt_rank`, times
/// the Jacobian ideal of the base when the base ring has relations.
pub fn pc_saturating_ideal(p: &Presentation) -> Ideal {
    let fitt = fitting_ideal(p, generic_rank(p));
    let ring = p.ring();
    if ring.is_quotient() {
        let jac = Ideal::new(ring, ring.jacobian_ideal_generators()).expect("same ring");
        fitt.product(&jac)
    } else {
        fitt
    }
}

/// `(J : sing^∞)` in the joint ring, computed generator by generator.
pub fn primary_component(l: &LinearSpaceIdeal, sing: &Ideal) -> Result<PrimaryComponentIdeal> {
    if sing.ring() != &l.base_ring {
        return Err(Error::InvalidArgument("singular-locus ideal is not over the base ring".into()));
    }
    if sing.is_zero() {
        return Err(Error::ZeroSaturator);
    }
    let n = l.base_ring.nvars();
    let b = l.fiber_vars.len();
    let positions: Vec<usize> = (0..n).collect();
    let ext = Ideal::new(&l.joint_ring, sing.generators().iter().map(|g| g.embed(n + b, &positions)).collect())?;
    let ideal = if l.ideal.is_zero() || sing.is_unit() { l.ideal.clone() } else { l.ideal.saturate_by_ideal(&ext)? };
    Ok(PrimaryComponentIdeal { ideal: ideal.minimalized(), saturating_ideal: sing.clone(), fiber_weights: fiber_weights(n, b) })
}

/// Whether the primary component is cut out by fiberwise-linear forms: every element of
/// fiber degree at least 2 in the reduced basis lies in the ideal of those of degree ≤ 1.
pub fn pc_is_linear(pc: &PrimaryComponentIdeal) -> bool {
    nonlinear_witness(pc).is_none()
}

/// An element of the reduced basis of fiber degree ≥ 2 outside the ideal generated by the
/// fiberwise-linear ones.
pub fn nonlinear_witness(pc: &PrimaryComponentIdeal) -> Option<Polynomial> {
    let ring = pc.ring();
    let w = &pc.fiber_weights;
    let gb: Vec<Polynomial> = pc.ideal.gb().iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
    let linear: Vec<Polynomial> = gb.iter().filter(|g| g.weighted_degree(w).unwrap_or(0) <= 1).cloned().collect();
    let span = Ideal::new(ring, linear).expect("same ring");
    gb.into_iter().filter(|g| g.weighted_degree(w).unwrap_or(0) >= 2).find(|g| !span.contains(g))
}

/// Checks `g ∉ J` and `g^k ∈ J`.
pub fn reducedness_witness(j: &Ideal, g: &Polynomial, k: u32) -> ReducednessVerdict {
    let g_in = j.contains(g);
    let pow_in = j.contains(&j.ring().pow(g, k));
    ReducednessVerdict { confirmed: !g_in && pow_in, g_in_ideal: g_in, power_in_ideal: pow_in, power: k }
}

/// Serre's criterion for a hypersurface `f = 0` in the ambient polynomial ring: normal iff
/// the locus `V(f, ∂f/∂v_1, .., ∂f/∂v_n)` has codimension at least 2 in `V(f)`. The caller
/// asserts `f` squarefree.
pub fn is_normal_hypersurface(ring: &CoordinateRing, f: &Polynomial) -> Result<NormalityVerdict> {
    ring.check(f)?;
    if ring.is_quotient() {
        return Err(Error::InvalidArgument("hypersurface test needs a polynomial ambient ring".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial is not a hypersurface".into()));
    }
    let n = ring.nvars();
    let mut gens = vec![f.clone()];
    gens.extend((0..n).map(|v| f.derivative(v)));
    let jac = Ideal::new(ring, gens)?;
    let hyper_dim = Ideal::principal(ring, f.clone())?.dimension().dim;
    let sing_dim = jac.dimension().dim;
    let codim = hyper_dim - sing_dim;
    Ok(NormalityVerdict { normal: codim >= 2, singular_codim: codim, squarefree_asserted: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{presentation_of_ideal, singular_locus};

    fn rem_ideal() -> Presentation {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        let g: Vec<Polynomial> = ["x^2", "x*y^2", "y^4"].iter().map(|s| r.parse_poly(s).unwrap()).collect();
        presentation_of_ideal(&r, &g).unwrap()
    }

    #[test]
    fn rem_linear_space() {
        let l = linear_space_ideal(&rem_ideal()).unwrap();
        assert_eq!(l.fiber_vars, vec!["z1", "z2", "z3"]);
        let expected = Ideal::parse(&l.joint_ring, "y^2*z1 - x*z2, y^2*z2 - x*z3").unwrap();
        assert!(l.ideal.equals(&expected));
        let g = l.joint_ring.parse_poly("y*(z2^2 - z1*z3)").unwrap();
        assert!(reducedness_witness(&l.ideal, &g, 2).confirmed);
        let (sing, _) = singular_locus(&l.source);
        let pc = primary_component(&l, &sing).unwrap();
        let expected = Ideal::parse(&l.joint_ring, "y^2*z1 - x*z2, y^2*z2 - x*z3, z2^2 - z1*z3").unwrap();
        assert!(pc.ideal.equals(&expected));
        assert!(!pc_is_linear(&pc));
    }

    #[test]
    fn koszul_linear_space_is_its_own_component() {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        let p = presentation_of_ideal(&r, &[r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()]).unwrap();
        let l = linear_space_ideal(&p).unwrap();
        assert!(l.ideal.equals(&Ideal::parse(&l.joint_ring, "y*z1 - x*z2").unwrap()));
        let pc = primary_component(&l, &Ideal::parse(&r, "x, y").unwrap()).unwrap();
        assert!(pc.ideal.equals(&l.ideal));
        assert!(pc_is_linear(&pc));
        let f = l.joint_ring.parse_poly("y*z1 - x*z2").unwrap();
        assert!(is_normal_hypersurface(&l.joint_ring, &f).unwrap().normal);
    }

    #[test]
    fn free_module_has_no_equations() {
        let r = CoordinateRing::polynomial(&["x"]);
        let l = linear_space_ideal(&Presentation::free(&r, 2)).unwrap();
        assert!(l.ideal.is_zero());
        let pc = primary_component(&l, &Ideal::unit(&r)).unwrap();
        assert!(pc.ideal.is_zero() && pc_is_linear(&pc));
    }

    #[test]
    fn fiber_names_avoid_collisions() {
        let r = CoordinateRing::polynomial(&["z1", "x"]);
        let l = linear_space_ideal(&Presentation::free(&r, 1)).unwrap();
        assert_eq!(l.fiber_vars, vec!["zz1"]);
    }

    #[test]
    fn normality_of_simple_hypersurfaces() {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        assert!(!is_normal_hypersurface(&r, &r.parse_poly("x^3 - y^2").unwrap()).unwrap().normal);
        assert!(is_normal_hypersurface(&r, &r.parse_poly("x").unwrap()).unwrap().normal);
    }

    #[test]
    fn nilpotency_checks() {
        let r = CoordinateRing::polynomial(&["x"]);
        let x = r.parse_poly("x").unwrap();
        assert!(reducedness_witness(&Ideal::parse(&r, "x^2").unwrap(), &x, 2).confirmed);
        let v = reducedness_witness(&Ideal::parse(&r, "x").unwrap(), &x, 2);
        assert!(!v.confirmed && v.g_in_ideal);
    }
}

use super::presentation::Presentation;
use super::torsion::torsion_submodule;
use crate::error::{Error, Result};
use crate::groebner::{syzygy_vectors, unit_vector, Submodule};
use crate::poly::{Polynomial, RingMap};

/// A homomorphism `coker M_1 → coker M_2` given by the images of the source generators
/// as vectors in `R^{b_2}`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Vec<Polynomial>>,
}

impl ModuleMap {
    /// Checks that every source relation maps into the target relations.
    pub fn new(source: Presentation, target: Presentation, images: Vec<Vec<Polynomial>>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::InvalidArgument("module map between different rings".into()));
        }
        if images.len() != source.num_generators() || images.iter().any(|v| v.len() != target.num_generators()) {
            return Err(Error::InvalidArgument("image vectors do not match the generator counts".into()));
        }
        let map = ModuleMap { source, target, images };
        let rel = map.target.relation_module();
        for c in map.source.columns() {
            if !rel.contains(&map.apply(c)) {
                return Err(Error::InvalidArgument("a source relation does not map to zero".into()));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    /// The image of `v ∈ R^{b_1}` in `R^{b_2}`.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let ring = self.source.ring();
        (0..self.target.num_generators())
            .map(|row| {
                let mut acc = ring.zero();
                for (img, c) in self.images.iter().zip(v) {
                    acc = &acc + &(&img[row] * c);
                }
                ring.reduce(&acc)
            })
            .collect()
    }

    /// Generators of `{v ∈ R^{b_1} : Φ v ∈ im M_2}`, the preimage of zero.
    fn kernel_preimage(&self) -> Vec<Vec<Polynomial>> {
        let b1 = self.source.num_generators();
        let mut vectors = self.images.clone();
        vectors.extend(self.target.columns().iter().cloned());
        syzygy_vectors(self.source.ring(), &vectors, self.target.num_generators())
            .into_iter()
            .map(|s| s[..b1].to_vec())
            .collect()
    }

    /// Generators (in `R^{b_1}`) of kernel classes that are nonzero in the source.
    pub fn kernel(&self) -> Vec<Vec<Polynomial>> {
        let rel = self.source.relation_module();
        self.kernel_preimage().into_iter().filter(|v| !rel.contains(v)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_empty()
    }

    /// Whether every target generator lies in `im Φ + im M_2`.
    pub fn is_surjective(&self) -> bool {
        let ring = self.target.ring();
        let b2 = self.target.num_generators();
        let mut gens = self.images.clone();
        gens.extend(self.target.columns().iter().cloned());
        let span = Submodule::new(ring, b2, gens).expect("consistent rank");
        (0..b2).all(|j| span.contains(&unit_vector(ring, b2, j)))
    }

    /// The same matrix over another ring: `φ*` applied to source, target and images.
    pub fn map_ring(&self, phi: &RingMap) -> Result<ModuleMap> {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|p| phi.apply(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new(self.source.map_ring(phi)?, self.target.map_ring(phi)?, images)
    }

    /// The induced map on torsion-free quotients; torsion maps into torsion.
    pub fn torsion_free(&self) -> Result<ModuleMap> {
        let s = torsion_submodule(&self.source)?.quotient;
        let t = torsion_submodule(&self.target)?.quotient;
        ModuleMap::new(s, t, self.images.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::super::presentation_of_ideal;
    use super::*;
    use crate::poly::CoordinateRing;

    #[test]
    fn inclusion_and_surjection() {
        let r = CoordinateRing::polynomial(&["x", "y"]);
        let x = r.parse_poly("x").unwrap();
        let y = r.parse_poly("y").unwrap();
        let m = presentation_of_ideal(&r, &[x.clone(), y.clone()]).unwrap();
        let o = Presentation::free(&r, 1).with_values(vec![r.one()]).unwrap();
        let incl = ModuleMap::new(m.clone(), o.clone(), vec![vec![x.clone()], vec![y.clone()]]).unwrap();
        assert!(incl.is_injective());
        assert!(!incl.is_surjective());
        let f2 = Presentation::free(&r, 2);
        let e = |i: usize| unit_vector(&r, 2, i);
        let surj = ModuleMap::new(f2, m, vec![e(0), e(1)]).unwrap();
        assert!(surj.is_surjective());
        assert!(!surj.is_injective());
    }
}

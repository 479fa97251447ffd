use serde::Serialize;

use super::presentation::{minimal_subset, Presentation};
use crate::groebner::syzygy_vectors;
use crate::poly::{CoordinateRing, Polynomial};

/// A free resolution `... → F_2 → F_1 → F_0 → S → 0`.
///
/// `maps[i]` is `F_{i+1} → F_i`, stored as the columns (images of the basis of
/// `F_{i+1}`), each of length `ranks[i]`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: CoordinateRing,
    pub ranks: Vec<usize>,
    pub maps: Vec<Vec<Vec<Polynomial>>>,
    /// The last syzygy module was computed and found to be zero.
    pub complete: bool,
    /// The input was graded, so the resolution is minimal.
    pub minimal: bool,
    pub warnings: Vec<String>,
}

impl Resolution {
    /// Projective dimension, when the resolution is complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then_some(self.maps.len())
    }

    /// `maps[i] ∘ maps[i+1]`, entrywise reduced; all zero for a complex.
    pub fn composition(&self, i: usize) -> Vec<Vec<Polynomial>> {
        let (outer, inner) = (&self.maps[i], &self.maps[i + 1]);
        inner
            .iter()
            .map(|col| {
                (0..self.ranks[i])
                    .map(|row| {
                        let mut acc = self.ring.zero();
                        for (k, c) in col.iter().enumerate() {
                            acc = &acc + &(&outer[k][row] * c);
                        }
                        self.ring.reduce(&acc)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_complex(&self) -> bool {
        (0..self.maps.len().saturating_sub(1)).all(|i| self.composition(i).iter().flatten().all(|p| p.is_zero()))
    }

    pub fn summary(&self) -> ResolutionSummary {
        ResolutionSummary {
            ranks: self.ranks.clone(),
            length: self.length(),
            complete: self.complete,
            minimal: self.minimal,
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionSummary {
    pub ranks: Vec<usize>,
    pub length: Option<usize>,
    pub complete: bool,
    pub minimal: bool,
    pub warnings: Vec<String>,
}

/// Resolves `coker M` starting from a minimized presentation, computing at most
/// `length_bound` syzygy modules beyond the presentation.
pub fn free_resolution(p: &Presentation, length_bound: usize) -> Resolution {
    let (min, graded) = p.minimize();
    let ring = p.ring().clone();
    let mut warnings = Vec::new();
    if !graded {
        warnings.push("input is not graded: ranks are upper bounds, minimality is not guaranteed".to_string());
    }
    let mut ranks = vec![min.num_generators()];
    let mut maps: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    let mut current: Vec<Vec<Polynomial>> = min.columns().to_vec();
    let mut complete = current.is_empty();
    let mut steps = 0;
    while !current.is_empty() {
        let rank = *ranks.last().unwrap();
        ranks.push(current.len());
        maps.push(current.clone());
        if steps == length_bound {
            break;
        }
        steps += 1;
        let syz = syzygy_vectors(&ring, &current, rank);
        let mut sorted = syz;
        sorted.sort_by_key(|v| v.iter().map(|c| c.total_degree()).max().unwrap_or(0));
        current = minimal_subset(&ring, maps.last().unwrap().len(), sorted);
        if current.is_empty() {
            complete = true;
        }
    }
    if !complete {
        warnings.push(format!("length bound {length_bound} exhausted; result inconclusive"));
    }
    Resolution { ring, ranks, maps, complete, minimal: graded, warnings }
}

/// Whether the minimal presentation matrix is injective, i.e. `0 → F_1 → F_0 → S → 0`.
/// Exact for graded input, where the minimal graded resolution localizes at the origin.
pub fn hom_dim_le_1_at_origin(p: &Presentation) -> bool {
    free_resolution(p, 1).maps.len() <= 1
}

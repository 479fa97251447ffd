//! Finitely presented modules `coker(M: R^a → R^b)`.

mod classify;
mod invariants;
mod map;
mod presentation;
mod resolution;
mod torsion;

pub use classify::{classify_sheaf, ClassifyReport};
pub use invariants::{fitting_ideal, generic_rank, min_generators_at, minors, rank_over_fractions, singular_locus};
pub use map::ModuleMap;
pub use presentation::{
    parse_ideal_file, parse_ring_of_file, presentation_of_ideal, syzygies, tensor_presentation, FreeElement,
    Presentation,
};
pub use resolution::{free_resolution, hom_dim_le_1_at_origin, Resolution, ResolutionSummary};
pub use torsion::{
    annihilator, is_torsion_free, torsion_annihilator, torsion_free_quotient, torsion_submodule, TorsionResult,
    TorsionSummary,
};

mod common;

use common::props;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_bases_are_reduced_and_order_independent((n, gens) in common::ideal_input()) {
        props::gb_determinism(n, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn saturation_stabilizes(
        (n, gens, f) in common::ideal_input().prop_flat_map(|(n, g)| (Just(n), Just(g), common::nonzero_polynomial(n, 2, 2)))
    ) {
        props::saturation_stabilizes(n, &gens, &f).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn syzygies_annihilate_generators((n, gens) in common::ideal_input()) {
        props::syzygies_are_exact(n, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn resolutions_are_complexes((n, gens) in common::ideal_input()) {
        props::resolution_composes(n, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn monomial_membership_matches_the_staircase((n, gens, f) in common::staircase_input()) {
        props::staircase_membership(n, &gens, &f).map_err(TestCaseError::fail)?;
    }
}

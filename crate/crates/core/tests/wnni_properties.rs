mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn weighted_nni_is_an_involution((fi, si) in fixture_and_site(), s in seed()) {
        involution(fi, si, &s)?;
    }

    #[test]
    fn membership_is_preserved(
        (fi, si) in fixture_and_site(),
        s in seed(),
        pick in any::<usize>(),
        t in dilation(),
        inside in any::<bool>(),
    ) {
        membership(fi, si, &s, pick, &t, inside)?;
    }

    #[test]
    fn case_matrices_match_max_formula((fi, si) in fixture_and_site(), s in seed()) {
        piecewise_agreement(fi, si, &s)?;
    }

    #[test]
    fn continuous_across_hyperplanes((fi, si) in fixture_and_site(), s in seed(), which in 0usize..2) {
        continuity(fi, si, &s, which)?;
    }
}

mod common;

use hyperinv::audit::{
    audit_all_roots, bollobas_sum, level_bounds_check, verify_cross_intersection,
};
use hyperinv::constructions::lower_bound_cover;
use hyperinv::cover::{part_degrees, prune_nonessential};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Every inequality of the counting argument holds on arbitrary minimal
    /// covers, from every starting vertex.
    #[test]
    fn audit_holds_on_random_minimal_covers(seed in any::<u64>()) {
        let c = common::random_minimal_bipartite_cover(&mut ChaCha8Rng::seed_from_u64(seed), 4, 8);
        let c = prune_nonessential(&c).unwrap();
        let (d1, d2) = part_degrees(&c).unwrap();
        for trace in audit_all_roots(&c).unwrap() {
            for level in &trace.levels {
                prop_assert!(verify_cross_intersection(&level.set_pairs));
                prop_assert!(bollobas_sum(&level.set_pairs).unwrap() <= BigRational::one());
            }
            let report = level_bounds_check(&trace, d1, d2).unwrap();
            prop_assert!(report.member_count <= usize::try_from(&report.level_sum).unwrap());
            // loosening the degrees keeps every check valid
            prop_assert!(level_bounds_check(&trace, d1 + 1, d2 + 1).is_ok());
        }
    }
}

#[test]
fn larger_constructions_from_every_root() {
    for d in 2..=4 {
        let c = lower_bound_cover(d).unwrap();
        let traces = audit_all_roots(&c).unwrap();
        assert_eq!(traces.len(), 1 << (d - 1));
        for t in traces {
            let r = level_bounds_check(&t, d as usize, d as usize).unwrap();
            assert!(r.closed_form_holds);
            assert!(r.levels.iter().all(|l| !l.slack_case));
        }
    }
}

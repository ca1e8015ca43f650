mod common;

use hyperinv::invertibility::{
    build_compatibility_graph, criticality, find_deficiency_set, find_inverting_permutation,
    is_invertibility_critical, is_invertible, Criticality,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matching_agrees_with_permutations(seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), 6, 6);
        prop_assert_eq!(is_invertible(&h), common::brute_force_invertible(&h));
    }

    #[test]
    fn witnesses_are_checkable(seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), 7, 7);
        match find_inverting_permutation(&h) {
            Some(p) => {
                prop_assert!(p.inverts(&h).unwrap());
                prop_assert!(find_deficiency_set(&h).is_none());
            }
            None => {
                let def = find_deficiency_set(&h).unwrap();
                let g = build_compatibility_graph(&h);
                prop_assert_eq!(g.neighborhood(&def.set), def.neighborhood.clone());
                prop_assert!(def.neighborhood.len() < def.set.len());
            }
        }
    }

    #[test]
    fn criticality_agrees_with_brute_force(seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        prop_assert_eq!(is_invertibility_critical(&h), common::brute_force_critical(&h));
        if let Criticality::NotCritical { witness_edge } = criticality(&h) {
            prop_assert!(!is_invertible(&h.without_edge(witness_edge)));
        }
    }
}

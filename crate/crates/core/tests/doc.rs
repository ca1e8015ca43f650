mod common;

use hyperinv::doc::{parse, to_json, CoverDoc, HypergraphDoc, InstanceDoc};
use hyperinv::search::encode_edge_cover_as_general;
use hyperinv::search::GeneralCoverInstance;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hypergraph_round_trip(seed in any::<u64>()) {
        let h = common::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), 8, 8);
        let text = to_json(&HypergraphDoc::from(&h));
        let back: HypergraphDoc = parse(&text).unwrap();
        prop_assert_eq!(back.to_hypergraph().unwrap(), h);
    }

    #[test]
    fn cover_round_trip(seed in any::<u64>()) {
        let c = common::random_minimal_bipartite_cover(&mut ChaCha8Rng::seed_from_u64(seed), 4, 6);
        let text = to_json(&CoverDoc::from(&c));
        let back: CoverDoc = parse(&text).unwrap();
        prop_assert_eq!(back.to_cover().unwrap(), c);
    }

    #[test]
    fn instance_round_trip(seed in any::<u64>()) {
        let c = common::random_minimal_bipartite_cover(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4);
        let inst = encode_edge_cover_as_general(c.host(), c.members(), 3).unwrap();
        let text = to_json(&inst.to_doc());
        let back: InstanceDoc = parse(&text).unwrap();
        prop_assert_eq!(GeneralCoverInstance::from_doc(&back).unwrap(), inst);
    }

    #[test]
    fn truncated_input_reports_an_offset_inside_the_text(seed in any::<u64>(), cut in 1usize..40) {
        let h = common::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4);
        let text = to_json(&HypergraphDoc::from(&h));
        let cut = text.len().saturating_sub(cut).max(1);
        match parse::<HypergraphDoc>(&text[..cut]) {
            Err(hyperinv::Error::Parse { offset, .. }) => prop_assert!(offset <= cut),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

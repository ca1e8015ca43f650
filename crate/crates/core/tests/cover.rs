mod common;

use hyperinv::cover::{
    all_essential, is_edge_cover, is_minimal_edge_cover, part_degrees, prune_nonessential,
};
use hyperinv::{CoverFamily, HostGraph, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_family(rng: &mut impl Rng, host: HostGraph, max_members: usize) -> Vec<VertexSet> {
    let n = host.order();
    let mut members: Vec<VertexSet> = (0..rng.random_range(1..=max_members))
        .map(|_| {
            (0..n)
                .filter(|_| rng.random_bool(0.5))
                .collect::<VertexSet>()
        })
        .filter(|m| !m.is_empty())
        .collect();
    members.sort();
    members.dedup();
    members
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimality_matches_naive_check(seed in any::<u64>(), bipartite in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = if bipartite {
            HostGraph::CompleteBipartite { left: rng.random_range(1..4), right: rng.random_range(1..4) }
        } else {
            HostGraph::Complete { order: rng.random_range(2..6) }
        };
        let members = random_family(&mut rng, host, 6);
        prop_assume!(!members.is_empty());
        let labels = (0..host.order()).map(|i| format!("v{i}")).collect();
        let c = CoverFamily::new(labels, host, members).unwrap();
        prop_assert_eq!(is_minimal_edge_cover(&c), common::naive_minimal_cover(&c));
    }

    #[test]
    fn pruning_keeps_minimality_and_degrees(seed in any::<u64>()) {
        let c = common::random_minimal_bipartite_cover(&mut ChaCha8Rng::seed_from_u64(seed), 4, 6);
        let pruned = prune_nonessential(&c).unwrap();
        prop_assert!(is_minimal_edge_cover(&pruned));
        prop_assert!(all_essential(&pruned));
        prop_assert_eq!(pruned.len(), c.len());
        let (a, b) = part_degrees(&pruned).unwrap();
        let (x, y) = part_degrees(&c).unwrap();
        prop_assert!(a <= x && b <= y);
    }
}

/// Deleting one of two part-1 twins leaves minimal-cover status unchanged.
#[test]
fn twin_deletion_preserves_status() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
    let mut minimal = 0;
    for trial in 0..500 {
        // half the samples start from a minimal cover
        let (host, members) = if trial % 2 == 0 {
            let c = common::random_minimal_bipartite_cover(&mut rng, 3, 5);
            (c.host(), c.members().to_vec())
        } else {
            let host = HostGraph::CompleteBipartite {
                left: rng.random_range(1..4),
                right: rng.random_range(1..4),
            };
            (host, random_family(&mut rng, host, 6))
        };
        let HostGraph::CompleteBipartite { left, right } = host else {
            unreachable!()
        };
        // vertex `left + right` becomes a twin of part-1 vertex `x`
        let x = rng.random_range(0..left);
        let with_twin: Vec<VertexSet> = members
            .iter()
            .map(|m| {
                let shifted: VertexSet = m.map(|v| if v >= left { v + 1 } else { v });
                let mut s = shifted.clone();
                if m.contains(x) {
                    s.insert(left);
                }
                s
            })
            .collect();
        let labels = |n: usize| (0..n).map(|i| format!("v{i}")).collect::<Vec<_>>();
        let before = CoverFamily::new(
            labels(left + right + 1),
            HostGraph::CompleteBipartite {
                left: left + 1,
                right,
            },
            with_twin.clone(),
        )
        .unwrap();
        let without: Vec<VertexSet> = with_twin
            .iter()
            .map(|m| {
                let mut m = m.clone();
                m.remove(x);
                m.map(|v| if v > x { v - 1 } else { v })
            })
            .collect();
        let after = CoverFamily::new(labels(left + right), host, without).unwrap();
        assert_eq!(is_edge_cover(&before), is_edge_cover(&after));
        assert_eq!(
            is_minimal_edge_cover(&before),
            is_minimal_edge_cover(&after)
        );
        assert_eq!(after.len(), before.len());
        minimal += usize::from(is_minimal_edge_cover(&before));
    }
    assert!(minimal >= 250, "too few minimal samples: {minimal}");
}

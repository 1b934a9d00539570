mod common;

use common::{components, decomposed_modularity, graph_strategy, naive_optimum, pairwise_modularity, two_partition_formula};
use hcs_core::community::{best_two_partition, brute_force_best_partition, louvain_traced, partition_metrics};
use hcs_core::{louvain, modularity, Partition, Vig};
use proptest::prelude::*;

fn assignment_strategy(max_n: usize) -> impl Strategy<Value = (Vig, Vec<u32>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.num_vertices();
        (Just(g), proptest::collection::vec(0..n as u32, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forms_agree((g, raw) in assignment_strategy(40)) {
        let p = Partition::from_assignment(&raw);
        let q = modularity(&g, &p).unwrap();
        prop_assert!((q - pairwise_modularity(&g, p.assignment())).abs() < 1e-12);
        prop_assert!((q - decomposed_modularity(&g, p.assignment())).abs() < 1e-12);
        prop_assert!((-0.5..=1.0).contains(&q));
    }

    #[test]
    fn metrics_are_consistent((g, raw) in assignment_strategy(30)) {
        let p = Partition::from_assignment(&raw);
        let pm = partition_metrics(&g, &p).unwrap();
        let (e_in, e_out, vol) = common::community_counts(&g, p.assignment());
        prop_assert_eq!(pm.e_in.iter().map(|&x| x as f64).collect::<Vec<_>>(), e_in);
        prop_assert_eq!(pm.e_out.iter().map(|&x| x as f64).collect::<Vec<_>>(), e_out);
        prop_assert_eq!(pm.vol.iter().map(|&x| x as f64).collect::<Vec<_>>(), vol);
        let cut = g.edges().filter(|&(u, v)| raw[u as usize] != raw[v as usize]).count() as u64;
        prop_assert_eq!(pm.inter_edges, cut);
    }

    #[test]
    fn two_partition_identity(g in graph_strategy(12), mask in any::<u16>()) {
        let n = g.num_vertices();
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        prop_assume!(inside.iter().any(|&b| b) && inside.iter().any(|&b| !b));
        let raw: Vec<u32> = inside.iter().map(|&b| b as u32).collect();
        let q = modularity(&g, &Partition::from_assignment(&raw)).unwrap();
        prop_assert!((q - two_partition_formula(&g, &inside)).abs() < 1e-12);
    }

    #[test]
    fn louvain_is_sound_and_monotone(g in graph_strategy(9), seed in any::<u64>()) {
        let (_, q_opt) = brute_force_best_partition(&g).unwrap();
        let run = louvain_traced(&g, seed, 1.0).unwrap();
        let q = modularity(&g, &run.partition).unwrap();
        prop_assert!(q <= q_opt + 1e-9);
        prop_assert!(run.pass_modularity.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        prop_assert!(run.level_modularity.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        prop_assert!((run.level_modularity.last().unwrap() - q).abs() < 1e-12);
    }

    #[test]
    fn louvain_never_joins_components(g in graph_strategy(24), seed in any::<u64>()) {
        let roots = components(&g);
        let p = louvain(&g, seed, 1.0).unwrap();
        for u in 0..g.num_vertices() {
            for v in 0..g.num_vertices() {
                if p.community_of(u as u32) == p.community_of(v as u32) {
                    prop_assert_eq!(roots[u], roots[v]);
                }
            }
        }
    }

    #[test]
    fn louvain_is_deterministic(g in graph_strategy(30), seed in any::<u64>()) {
        prop_assert_eq!(louvain(&g, seed, 1.0).unwrap(), louvain(&g, seed, 1.0).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn optimum_dominates_two_partition(g in graph_strategy(8)) {
        let (p, q_opt) = brute_force_best_partition(&g).unwrap();
        prop_assert!((q_opt - naive_optimum(&g)).abs() < 1e-12);
        prop_assert!((q_opt - modularity(&g, &p).unwrap()).abs() < 1e-12);
        let two = best_two_partition(&g).unwrap();
        prop_assert!(q_opt >= two.modularity - 1e-12);
        let mut raw = vec![0u32; g.num_vertices()];
        for &v in &two.side {
            raw[v as usize] = 1;
        }
        prop_assert!((two.modularity - modularity(&g, &Partition::from_assignment(&raw)).unwrap()).abs() < 1e-12);
        prop_assert!(two.side.len() <= g.num_vertices() / 2);
    }

    #[test]
    fn two_partition_beats_every_split(g in graph_strategy(10)) {
        let n = g.num_vertices();
        let two = best_two_partition(&g).unwrap();
        for mask in 1u32..(1 << (n - 1)) {
            let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            prop_assert!(two_partition_formula(&g, &inside) <= two.modularity + 1e-12);
        }
    }
}

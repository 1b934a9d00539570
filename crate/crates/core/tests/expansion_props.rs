mod common;

use common::{complete, graph_strategy, naive_expansion};
use hcs_core::expansion::{cut_size, edge_expansion_exact, hcs_expansion_audit, subset_expansion};
use hcs_core::{decompose, DecomposeConfig, Vig};
use num_rational::Ratio;
use proptest::prelude::*;

#[test]
fn complete_graphs() {
    for n in 3..=10u64 {
        let r = edge_expansion_exact(&complete(n as usize)).unwrap();
        assert_eq!(r.h, Ratio::from_integer(n.div_ceil(2)), "K{n}");
        assert_eq!(r.argmin_set.len() as u64, n / 2, "minimizer of K{n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_matches_naive(g in graph_strategy(12)) {
        let r = edge_expansion_exact(&g).unwrap();
        let (num, den) = naive_expansion(&g);
        prop_assert_eq!(r.h, Ratio::new(num, den));
        prop_assert!(!r.argmin_set.is_empty() && r.argmin_set.len() <= g.num_vertices() / 2);
        prop_assert_eq!(subset_expansion(&g, &r.argmin_set).unwrap(), r.h);
    }

    #[test]
    fn deleting_an_edge_costs_at_most_one(g in graph_strategy(12), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        let drop = pick.index(edges.len());
        let smaller = Vig::from_edges(g.num_vertices(), edges.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &e)| e));
        let h = edge_expansion_exact(&g).unwrap().h;
        let h2 = edge_expansion_exact(&smaller).unwrap().h;
        prop_assert!(h2 + Ratio::from_integer(1) >= h);
        prop_assert!(h2 <= h);
    }

    #[test]
    fn part_unions_bound_expansion(g in graph_strategy(16), s in any::<u64>(), mask in any::<u32>()) {
        let n = g.num_vertices();
        let h = edge_expansion_exact(&g).unwrap().h;
        let t = decompose(&g, DecomposeConfig::with_seed(s)).unwrap();
        for node in t.nodes.iter().filter(|x| !x.is_leaf()) {
            let k = node.children.len();
            // A proper, nonempty selection of children.
            let pick = mask as usize % ((1 << k.min(16)) - 1) + 1;
            let mut inside = vec![false; n];
            for (i, &c) in node.children.iter().enumerate() {
                if i < 16 && pick >> i & 1 == 1 {
                    for &v in &t.node(c).vertices {
                        inside[v as usize] = true;
                    }
                }
            }
            let size = inside.iter().filter(|&&b| b).count();
            prop_assume!(size <= n / 2 && size > 0);
            prop_assert!(h <= Ratio::new(cut_size(&g, &inside), size as u64));
        }
    }

    #[test]
    fn audit_covers_every_node(g in graph_strategy(20), s in any::<u64>()) {
        let t = decompose(&g, DecomposeConfig::with_seed(s)).unwrap();
        let audit = hcs_expansion_audit(&g, &t);
        prop_assert_eq!(audit.len(), t.nodes.len());
        for (a, node) in audit.iter().zip(&t.nodes) {
            prop_assert_eq!(a.node, node.id);
            prop_assert_eq!(a.is_leaf, node.is_leaf());
            prop_assert_eq!(a.upper_report.is_some(), !node.is_leaf());
            if let Some(r) = &a.upper_report {
                prop_assert_eq!(*r, Ratio::new(2 * node.inter_edges(), node.size() as u64));
            }
            prop_assert_eq!(a.exact.is_some(), node.size() >= 2);
            if let Some(e) = &a.exact {
                let sub = g.induced(&node.vertices);
                let (num, den) = naive_expansion(&sub);
                prop_assert_eq!(e.h, Ratio::new(num, den));
                prop_assert!(e.argmin_set.iter().all(|v| node.vertices.contains(v)));
            }
        }
    }
}

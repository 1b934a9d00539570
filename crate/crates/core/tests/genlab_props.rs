mod common;

use common::{check_fidelity, components, count_models, graph_strategy, pairwise_modularity};
use hcs_core::cnf::{Cnf, Origin};
use hcs_core::community::modularity;
use hcs_core::genlab::{
    default_charges, disjoint_copies, generate, random_kcnf, ring_of_cliques, rooted_clique_product, tseitin,
    GenParams,
};
use hcs_core::{cnf, Error, Partition, Vig};
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = GenParams> {
    (1u32..=3, 2usize..=4, 4usize..=12, 2usize..=4, 2.0f64..6.0, 0.0f64..0.1, 0.25f64..=1.0, any::<u64>(), prop::option::of(0.0f64..2.5))
        .prop_map(|(depth, degree, leaf_size, k, cvr, b, iv, seed, beta)| GenParams {
            depth,
            degree,
            leaf_size,
            clause_width: k.min(degree),
            cvr,
            powerlaw_beta: beta,
            bridge_fraction: b,
            inter_var_fraction: iv,
            seed,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generator_fidelity(p in params_strategy()) {
        let inst = match generate(&p) {
            Ok(inst) => inst,
            Err(Error::InfeasibleBudget { .. }) | Err(Error::BadParams(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        check_fidelity(&p, &inst).map_err(TestCaseError::fail)?;
        let again = generate(&p).unwrap();
        prop_assert_eq!(cnf::render_dimacs(&inst.cnf), cnf::render_dimacs(&again.cnf));
        prop_assert_eq!(inst.sidecar_json().to_string(), again.sidecar_json().to_string());
    }

    #[test]
    fn tseitin_parity_decides_satisfiability(g in graph_strategy(6), charges in any::<u8>(), s in any::<u64>()) {
        prop_assume!(g.num_edges() <= 6);
        let n = g.num_vertices();
        let ch: Vec<bool> = (0..n).map(|v| charges >> v & 1 == 1).collect();
        match tseitin(&g, &ch, s) {
            Ok(f) => {
                prop_assert_eq!(f.num_vars, g.num_edges());
                let expect: usize = (0..n as u32).map(|v| 1usize << (g.degree(v).max(1) - 1)).sum();
                prop_assert_eq!(f.num_clauses(), expect);
                let odd = ch.iter().filter(|&&b| b).count() % 2 == 1;
                prop_assert_eq!(count_models(&f) > 0, !odd);
            }
            Err(Error::NotConnected) => prop_assert!(g.connected_components().len() > 1),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn copies_multiply_components(g in graph_strategy(10), t in 1usize..5) {
        let f = common::edge_cnf(&g);
        let copies = disjoint_copies(&f, t).unwrap();
        let big = Vig::build(&copies);
        prop_assert_eq!(big.connected_components().len(), t * g.connected_components().len());
        prop_assert_eq!(big.num_edges(), t * g.num_edges());
        let roots: Vec<usize> = components(&big);
        prop_assert_eq!(roots.len(), t * g.num_vertices());
    }

    #[test]
    fn ring_shape(q in 3usize..12, c in 3usize..9, s in any::<u64>()) {
        let r = ring_of_cliques(q, c, s).unwrap();
        prop_assert_eq!(r.vig.num_vertices(), q * c);
        prop_assert_eq!(r.vig.num_edges(), q * c * (c - 1) / 2 + q);
        let deg = r.vig.degrees();
        prop_assert_eq!(deg.iter().filter(|&&d| d == c + 1).count(), q);
        prop_assert_eq!(deg.iter().filter(|&&d| d == c - 1).count(), q * (c - 1));
        prop_assert_eq!(Vig::build(&r.cnf), r.vig.clone());
    }
}

#[test]
fn copies_of_equal_parts_have_known_modularity() {
    let f = Cnf::from_ints(4, &[&[1, 2, 3], &[-3, 4]], Origin::Parsed).unwrap();
    for t in 1..=6usize {
        let g = Vig::build(&disjoint_copies(&f, t).unwrap());
        let raw: Vec<u32> = (0..4 * t as u32).map(|v| v / 4).collect();
        let q = modularity(&g, &Partition::from_assignment(&raw)).unwrap();
        assert!((q - (1.0 - 1.0 / t as f64)).abs() < 1e-12);
        assert!((pairwise_modularity(&g, &raw) - q).abs() < 1e-12);
    }
}

#[test]
fn rooted_product_meets_the_block_bound() {
    for seed in 0..5 {
        let f = random_kcnf(100, 2, 1.0, seed).unwrap();
        let g = Vig::build(&f);
        let p = 10;
        let rp = rooted_clique_product(&f, p, 2).unwrap();
        let big = Vig::build(&rp.cnf);
        let m = g.num_edges() as f64;
        let m2 = big.num_edges() as f64;
        let d_max = *g.degrees().iter().max().unwrap() as f64;
        let q = modularity(&big, &Partition::from_parts(big.num_vertices(), &rp.blocks)).unwrap();
        let bound = 1.0 - m / m2 - (d_max + p as f64).powi(2) / (2.0 * m2);
        assert!(q >= bound, "seed {seed}: Q = {q} < {bound}");
        // Every block is a clique.
        for block in &rp.blocks {
            for (i, &u) in block.iter().enumerate() {
                assert!(block[i + 1..].iter().all(|&v| big.has_edge(u, v)));
            }
        }
        assert!(rp.cnf.num_clauses() - f.num_clauses() <= 100 * p * p);
    }
}

#[test]
fn even_charges_satisfiable_on_small_graphs() {
    // Every connected graph on 4 vertices, every even charge vector.
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for mask in 1u32..64 {
        let g = Vig::from_edges(4, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
        if !g.is_connected() {
            continue;
        }
        for ch in 0u32..16 {
            let charges: Vec<bool> = (0..4).map(|v| ch >> v & 1 == 1).collect();
            let f = tseitin(&g, &charges, 1).unwrap();
            assert_eq!(count_models(&f) > 0, ch.count_ones() % 2 == 0);
        }
        assert_eq!(count_models(&tseitin(&g, &default_charges(4), 0).unwrap()), 0);
    }
}

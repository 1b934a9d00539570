//! Independent reference computations shared by the integration tests.
//!
//! Everything here is written from the textbook definitions with no reuse of
//! the library's own arithmetic: O(n²) sums, naive subset loops, plain
//! truth tables.

#![allow(dead_code)]

use hcs_core::cnf::{Clause, Cnf, Origin};
use hcs_core::genlab::{GenParams, PlantedInstance};
use hcs_core::vig::Vig;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pairwise modularity: `(1/2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j)`.
pub fn pairwise_modularity(g: &Vig, community: &[u32]) -> f64 {
    let n = g.num_vertices();
    let two_m = 2.0 * g.num_edges() as f64;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if community[i] != community[j] {
                continue;
            }
            let a = if g.has_edge(i as u32, j as u32) { 1.0 } else { 0.0 };
            let ki = g.degree(i as u32) as f64;
            let kj = g.degree(j as u32) as f64;
            sum += a - ki * kj / two_m;
        }
    }
    sum / two_m
}

/// Per-community internal edges, cut edges and volume, counted edge by edge.
pub fn community_counts(g: &Vig, community: &[u32]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let k = community.iter().copied().max().map_or(0, |c| c as usize + 1);
    let (mut e_in, mut e_out, mut vol) = (vec![0.0; k], vec![0.0; k], vec![0.0; k]);
    for (u, v) in g.edges() {
        let (cu, cv) = (community[u as usize] as usize, community[v as usize] as usize);
        vol[cu] += 1.0;
        vol[cv] += 1.0;
        if cu == cv {
            e_in[cu] += 1.0;
        } else {
            e_out[cu] += 1.0;
            e_out[cv] += 1.0;
        }
    }
    (e_in, e_out, vol)
}

/// `1 − (1/2m) Σ e_out(c) − (1/4m²) Σ vol(c)²`.
pub fn decomposed_modularity(g: &Vig, community: &[u32]) -> f64 {
    let m = g.num_edges() as f64;
    let (_, e_out, vol) = community_counts(g, community);
    1.0 - e_out.iter().sum::<f64>() / (2.0 * m) - vol.iter().map(|v| v * v).sum::<f64>() / (4.0 * m * m)
}

/// `vol(S)/m · (1 − vol(S)/2m) − e_out(S)/m`.
pub fn two_partition_formula(g: &Vig, inside: &[bool]) -> f64 {
    let m = g.num_edges() as f64;
    let vol: f64 = (0..g.num_vertices()).filter(|&v| inside[v]).map(|v| g.degree(v as u32) as f64).sum();
    let cut = g.edges().filter(|&(u, v)| inside[u as usize] != inside[v as usize]).count() as f64;
    vol / m * (1.0 - vol / (2.0 * m)) - cut / m
}

/// Best modularity over every assignment in `0..n`ⁿ (n ≤ 8), using the
/// pairwise form. Slow but shares nothing with the library search.
pub fn naive_optimum(g: &Vig) -> f64 {
    let n = g.num_vertices();
    assert!(n <= 8);
    let mut best = f64::NEG_INFINITY;
    let mut assignment = vec![0u32; n];
    loop {
        // Only canonical labelings: each label at most one above the running max.
        let mut canonical = true;
        let mut top = 0;
        for (i, &c) in assignment.iter().enumerate() {
            if i == 0 && c != 0 || c > top + 1 {
                canonical = false;
                break;
            }
            top = top.max(c);
        }
        if canonical {
            best = best.max(pairwise_modularity(g, &assignment));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            assignment[i] += 1;
            if (assignment[i] as usize) < n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Minimum of `cut(S)/|S|` over every nonempty `S` with `|S| ≤ n/2`,
/// as a reduced fraction `(cut, size)`.
pub fn naive_expansion(g: &Vig) -> (u64, u64) {
    let n = g.num_vertices();
    let mut best = (u64::MAX, 1u64);
    for mask in 1u64..(1 << n) - 1 {
        let size = mask.count_ones() as u64;
        if size as usize > n / 2 {
            continue;
        }
        let cut = g
            .edges()
            .filter(|&(u, v)| (mask >> u & 1) != (mask >> v & 1))
            .count() as u64;
        if (cut as u128) * (best.1 as u128) < (best.0 as u128) * (size as u128) {
            best = (cut, size);
        }
    }
    let d = gcd(best.0, best.1);
    (best.0 / d, best.1 / d)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Models of `cnf`, by exhaustive truth table.
pub fn count_models(cnf: &Cnf) -> u64 {
    let n = cnf.num_vars;
    assert!(n <= 20);
    (0u64..1 << n)
        .filter(|bits| {
            let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            cnf.is_satisfied_by(&a)
        })
        .count() as u64
}

/// Connected components by union-find.
pub fn components(g: &Vig) -> Vec<usize> {
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        parent[a] = b;
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// G(n, p) without isolated-edge guarantees; rerolls until at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vig {
    loop {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() || n < 2 {
            return Vig::from_edges(n, edges);
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Vig {
    Vig::from_edges(n, (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))))
}

pub fn bridged_triangles() -> Vig {
    Vig::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
}

/// One binary clause per edge, all positive.
pub fn edge_cnf(g: &Vig) -> Cnf {
    let clauses = g
        .edges()
        .map(|(u, v)| Clause::from_ints(&[u as i32 + 1, v as i32 + 1]))
        .collect();
    Cnf::new(g.num_vertices(), clauses, Origin::Constructed).unwrap()
}

/// Graphs on `2..=max_n` vertices with at least one edge.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Vig> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let total = pairs.len();
        proptest::collection::vec(any::<bool>(), total).prop_filter_map("no edges", move |mask| {
            let edges: Vec<_> = pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            (!edges.is_empty()).then(|| Vig::from_edges(n, edges))
        })
    })
}

/// Random formulas: up to `max_vars` variables, clauses of width 1..=max_width.
pub fn cnf_strategy(max_vars: usize, max_clauses: usize, max_width: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        let clause = proptest::collection::vec(lit, 1..=max_width);
        proptest::collection::vec(clause, 0..=max_clauses).prop_map(move |cs| {
            let clauses = cs.iter().map(|c| Clause::from_ints(c)).collect();
            Cnf::new(n, clauses, Origin::Constructed).unwrap()
        })
    })
}

/// Checks the planted structure against the clauses, level by level.
pub fn check_fidelity(p: &GenParams, inst: &PlantedInstance) -> Result<(), String> {
    let n = p.leaf_size * p.degree.pow(p.depth);
    if inst.cnf.num_vars != n {
        return Err(format!("numVars {} != {n}", inst.cnf.num_vars));
    }
    let cvr = inst.cnf.num_clauses() as f64 / n as f64;
    if (cvr - p.cvr).abs() > 1.0 / n as f64 {
        return Err(format!("cvr {cvr} vs {}", p.cvr));
    }
    let tree = &inst.planted;
    let mut per_level = vec![0usize; p.depth as usize + 1];
    for clause in &inst.cnf.clauses {
        if clause.width() != p.clause_width {
            return Err(format!("clause width {}", clause.width()));
        }
        let vars: Vec<u32> = clause.vars().map(|v| v - 1).collect();
        // Lowest planted node holding the whole clause.
        let mut node = 0;
        while let Some(&c) = tree.nodes[node].children.iter().find(|&&c| vars.iter().all(|&v| tree.nodes[c].contains(v))) {
            node = c;
        }
        let here = &tree.nodes[node];
        if here.children.is_empty() {
            continue;
        }
        let mut hit: Vec<usize> = vars
            .iter()
            .map(|&v| here.children.iter().position(|&c| tree.nodes[c].contains(v)).unwrap())
            .collect();
        hit.sort_unstable();
        hit.dedup();
        if hit.len() != p.clause_width {
            return Err(format!("bridge clause {:?} spans {} sub-communities", vars, hit.len()));
        }
        let level = (here.size / p.leaf_size).ilog(p.degree) as usize;
        per_level[level] += 1;
    }
    if per_level[1..] != inst.bridge_clauses[..] {
        return Err(format!("bridges per level {:?} vs {:?}", &per_level[1..], inst.bridge_clauses));
    }
    Ok(())
}

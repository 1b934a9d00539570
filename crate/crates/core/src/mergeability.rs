//! Resolvability and mergeability of clause sets.
//!
//! Two clauses are resolvable when exactly one variable appears with
//! opposite polarities across them; their merge overlap is the number of
//! identical literals they share. Scores normalize the overlap by the
//! worst-case resolvent width (`μ1`) or by the actual resolvent width (`μ2`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cnf::{Clause, Cnf, Literal};
use crate::error::{Error, Result};
use crate::hcs::{HcsTree, LevelValue};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MergeReport {
    pub num_clauses: usize,
    pub resolvable_pairs: u64,
    /// Σ over resolvable pairs of shared identical literals.
    pub merge_literal_total: u64,
    pub mu1_total: f64,
    pub mu2_total: f64,
    pub mu1_norm_r: f64,
    pub mu2_norm_r: f64,
    pub mu1_norm_all: f64,
    pub mu2_norm_all: f64,
    /// Resolvable pairs with a zero denominator (they score 0).
    pub degenerate_pairs: u64,
}

/// Literals sorted by (variable, polarity).
fn canonical(c: &Clause) -> Vec<Literal> {
    c.sorted_literals()
}

struct PairStats {
    clashes: usize,
    overlap: usize,
}

fn pair_stats(a: &[Literal], b: &[Literal]) -> PairStats {
    let (mut i, mut j) = (0, 0);
    let (mut clashes, mut overlap) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        match x.var().cmp(&y.var()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if x == y {
                    overlap += 1;
                } else {
                    clashes += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    PairStats { clashes, overlap }
}

/// True iff exactly one variable occurs with opposite polarities across the
/// two clauses. Tautological clauses are never resolvable.
pub fn resolvable(c1: &Clause, c2: &Clause) -> bool {
    if c1.is_tautology() || c2.is_tautology() {
        return false;
    }
    pair_stats(&canonical(c1), &canonical(c2)).clashes == 1
}

pub fn merge_scores(cnf: &Cnf) -> Result<MergeReport> {
    let clauses: Vec<&Clause> = cnf.clauses.iter().collect();
    merge_scores_of(&clauses)
}

/// Scores of an arbitrary clause collection.
pub fn merge_scores_of(clauses: &[&Clause]) -> Result<MergeReport> {
    let m = clauses.len();
    if m < 2 {
        return Err(Error::TooFewClauses);
    }
    let sorted: Vec<Option<Vec<Literal>>> = clauses
        .iter()
        .map(|c| (!c.is_tautology()).then(|| canonical(c)))
        .collect();
    let mut by_var: HashMap<u32, Vec<u32>> = HashMap::new();
    for (i, lits) in sorted.iter().enumerate() {
        for l in lits.iter().flatten() {
            by_var.entry(l.var()).or_default().push(i as u32);
        }
    }

    let mut report = MergeReport {
        num_clauses: m,
        ..Default::default()
    };
    // mark[j] == i + 1 once pair (i, j) has been examined.
    let mut mark = vec![0u32; m];
    for (i, lits) in sorted.iter().enumerate() {
        let Some(a) = lits else { continue };
        for l in a {
            for &j in &by_var[&l.var()] {
                let j = j as usize;
                if j <= i || mark[j] == i as u32 + 1 {
                    continue;
                }
                mark[j] = i as u32 + 1;
                let b = sorted[j].as_ref().unwrap();
                let stats = pair_stats(a, b);
                if stats.clashes != 1 {
                    continue;
                }
                report.resolvable_pairs += 1;
                report.merge_literal_total += stats.overlap as u64;
                let worst = a.len() + b.len() - 2;
                let actual = a.len() + b.len() - stats.overlap - 2;
                if worst == 0 || actual == 0 {
                    report.degenerate_pairs += 1;
                }
                if worst > 0 {
                    report.mu1_total += stats.overlap as f64 / worst as f64;
                }
                if actual > 0 {
                    report.mu2_total += stats.overlap as f64 / actual as f64;
                }
            }
        }
    }
    let all_pairs = (m as f64) * (m as f64 - 1.0) / 2.0;
    report.mu1_norm_all = report.mu1_total / all_pairs;
    report.mu2_norm_all = report.mu2_total / all_pairs;
    if report.resolvable_pairs > 0 {
        let r = report.resolvable_pairs as f64;
        report.mu1_norm_r = report.mu1_total / r;
        report.mu2_norm_r = report.mu2_total / r;
    }
    Ok(report)
}

/// Clauses whose variables all lie inside each tree node, by node id.
pub fn clauses_per_node(cnf: &Cnf, tree: &HcsTree) -> Vec<Vec<u32>> {
    let leaf_of = tree.leaf_of();
    let mut per_node: Vec<Vec<u32>> = vec![Vec::new(); tree.nodes.len()];
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        let mut deepest: Option<usize> = None;
        for v in clause.vars() {
            let leaf = leaf_of[v as usize - 1];
            deepest = Some(match deepest {
                None => leaf,
                Some(d) => lowest_common_ancestor(tree, d, leaf),
            });
        }
        let mut node = deepest;
        while let Some(id) = node {
            per_node[id].push(ci as u32);
            node = tree.node(id).parent;
        }
    }
    per_node
}

fn lowest_common_ancestor(tree: &HcsTree, mut a: usize, mut b: usize) -> usize {
    while tree.node(a).depth > tree.node(b).depth {
        a = tree.node(a).parent.unwrap();
    }
    while tree.node(b).depth > tree.node(a).depth {
        b = tree.node(b).parent.unwrap();
    }
    while a != b {
        a = tree.node(a).parent.unwrap();
        b = tree.node(b).parent.unwrap();
    }
    a
}

/// `mu1_norm_all` of every node's contained clauses; `None` when a node
/// contains fewer than two clauses.
pub fn node_mergeability(cnf: &Cnf, tree: &HcsTree) -> Vec<Option<f64>> {
    clauses_per_node(cnf, tree)
        .into_iter()
        .map(|ids| {
            let clauses: Vec<&Clause> = ids.iter().map(|&i| &cnf.clauses[i as usize]).collect();
            merge_scores_of(&clauses).ok().map(|r| r.mu1_norm_all)
        })
        .collect()
}

/// Mean community mergeability at `depth`; communities with fewer than two
/// contained clauses contribute 0.
pub fn community_merge_scores(cnf: &Cnf, tree: &HcsTree, depth: usize) -> LevelValue {
    level_mean(tree, &node_mergeability(cnf, tree), depth)
}

pub(crate) fn level_mean(tree: &HcsTree, per_node: &[Option<f64>], depth: usize) -> LevelValue {
    let values: Vec<f64> = tree
        .nodes_at(depth)
        .map(|n| per_node[n.id].unwrap_or(0.0))
        .collect();
    if values.is_empty() {
        LevelValue::ABSENT
    } else {
        LevelValue::present(values.iter().sum::<f64>() / values.len() as f64)
    }
}

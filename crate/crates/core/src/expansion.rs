//! Exact edge expansion `h(G) = min_{1 ≤ |S| ≤ n/2} |E(S, V∖S)| / |S|` for
//! small graphs, and an audit of the expansion-related quantities of every
//! HCS node.

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::community::exact::side_precedes;
use crate::error::{Error, Result};
use crate::hcs::HcsTree;
use crate::vig::Vig;

/// Largest graph for exhaustive subset enumeration.
pub const EXPANSION_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub h: Ratio<u64>,
    /// Minimizing set: smallest, then lexicographically first.
    pub argmin_set: Vec<u32>,
    pub subsets_checked: u64,
}

/// Minimum of `cut(S)/|S|` over nonempty `S` with `|S| ≤ n/2`.
///
/// Subsets are visited in Gray-code order so each step updates the cut in
/// `O(1)` word operations.
pub fn edge_expansion_exact(vig: &Vig) -> Result<ExpansionReport> {
    let n = vig.num_vertices();
    if n > EXPANSION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXPANSION_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::SingleVertex);
    }
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| vig.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let deg: Vec<i64> = vig.degrees().into_iter().map(|d| d as i64).collect();
    let half = (n / 2) as u32;

    let (mut mask, mut cut) = (0u32, 0i64);
    let mut best: Option<(u64, u32, u32)> = None; // (cut, size, mask)
    let mut checked = 0u64;
    for i in 1u32..(1u32 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let toward = (adj[v] & (mask & !bit)).count_ones() as i64;
        if mask & bit == 0 {
            cut += deg[v] - 2 * toward;
        } else {
            cut -= deg[v] - 2 * toward;
        }
        mask ^= bit;
        let size = mask.count_ones();
        if size == 0 || size > half {
            continue;
        }
        checked += 1;
        let c = cut as u64;
        let better = match best {
            None => true,
            Some((bc, bs, bm)) => {
                let (lhs, rhs) = (c * bs as u64, bc * size as u64);
                lhs < rhs || (lhs == rhs && side_precedes(mask, bm))
            }
        };
        if better {
            best = Some((c, size, mask));
        }
    }
    let (c, s, m) = best.expect("n >= 2");
    Ok(ExpansionReport {
        h: Ratio::new(c, s as u64),
        argmin_set: (0..n as u32).filter(|v| m >> v & 1 == 1).collect(),
        subsets_checked: checked,
    })
}

/// `cut(S)/|S|` for a proper nonempty vertex set.
pub fn subset_expansion(vig: &Vig, set: &[u32]) -> Result<Ratio<u64>> {
    let n = vig.num_vertices();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v as usize] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 {
        return Err(Error::EmptySet);
    }
    if size == n {
        return Err(Error::FullSet);
    }
    Ok(Ratio::new(cut_size(vig, &inside), size as u64))
}

pub fn cut_size(vig: &Vig, inside: &[bool]) -> u64 {
    vig.edges()
        .filter(|&(u, v)| inside[u as usize] != inside[v as usize])
        .count() as u64
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeAudit {
    pub node: usize,
    pub depth: usize,
    pub size: usize,
    pub is_leaf: bool,
    /// Inter-community edges of the node's split (internal nodes only).
    pub inter_edges: Option<u64>,
    /// `2·E_IC/|H|` (internal nodes only).
    pub upper_report: Option<Ratio<u64>>,
    /// Exact `h` of the induced subgraph, for 2 ≤ size ≤ 24.
    pub exact: Option<ExpansionReport>,
}

/// Reports `E_IC`, size and `2·E_IC/size` for every internal node and the
/// exact expansion of every small node's induced subgraph.
pub fn hcs_expansion_audit(vig: &Vig, tree: &HcsTree) -> Vec<NodeAudit> {
    hcs_expansion_audit_with(vig, tree, EXPANSION_LIMIT)
}

/// [`hcs_expansion_audit`] computing exact `h` only up to `limit` vertices
/// (capped at [`EXPANSION_LIMIT`]).
pub fn hcs_expansion_audit_with(vig: &Vig, tree: &HcsTree, limit: usize) -> Vec<NodeAudit> {
    let limit = limit.min(EXPANSION_LIMIT);
    tree.nodes
        .iter()
        .map(|node| {
            let exact = (node.size() >= 2 && node.size() <= limit).then(|| {
                let sub = vig.induced(&node.vertices);
                let mut r = edge_expansion_exact(&sub).expect("size checked");
                r.argmin_set = r.argmin_set.iter().map(|&i| node.vertices[i as usize]).collect();
                r
            });
            let internal = !node.is_leaf();
            NodeAudit {
                node: node.id,
                depth: node.depth,
                size: node.size(),
                is_leaf: node.is_leaf(),
                inter_edges: internal.then(|| node.inter_edges()),
                upper_report: internal
                    .then(|| Ratio::new(2 * node.inter_edges(), node.size() as u64)),
                exact,
            }
        })
        .collect()
}

pub fn ratio_json(r: &Ratio<u64>) -> Value {
    json!({
        "num": r.numer(),
        "den": r.denom(),
        "value": *r.numer() as f64 / *r.denom() as f64,
    })
}

pub fn report_json(r: &ExpansionReport) -> Value {
    json!({
        "h": ratio_json(&r.h),
        "argminSet": r.argmin_set.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "subsetsChecked": r.subsets_checked,
    })
}

pub fn audit_json(audit: &[NodeAudit]) -> Value {
    Value::Array(
        audit
            .iter()
            .map(|a| {
                json!({
                    "node": a.node,
                    "depth": a.depth,
                    "size": a.size,
                    "leaf": a.is_leaf,
                    "interEdges": a.inter_edges,
                    "upperReport": a.upper_report.as_ref().map(ratio_json),
                    "exact": a.exact.as_ref().map(report_json),
                })
            })
            .collect(),
    )
}

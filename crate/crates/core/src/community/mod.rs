//! Modularity, Louvain community detection and exhaustive partition oracles.
//!
//! Modularity is evaluated in its per-community form
//! `Q = Σ_c e_in(c)/m − (vol(c)/2m)²`, accumulated in integers and divided
//! once.

pub(crate) mod exact;
mod louvain;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vig::Vig;

pub use exact::{best_two_partition, brute_force_best_partition, TwoPartition, BRUTE_FORCE_LIMIT, TWO_PARTITION_LIMIT};
pub use louvain::{louvain, louvain_traced, LouvainRun};

/// Assignment of vertices to dense community ids `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    community_of: Vec<u32>,
    k: usize,
}

impl Partition {
    /// Relabels arbitrary ids densely in order of first appearance.
    pub fn from_assignment(raw: &[u32]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let community_of = raw
            .iter()
            .map(|&c| {
                let next = remap.len() as u32;
                *remap.entry(c).or_insert(next)
            })
            .collect();
        Partition {
            community_of,
            k: remap.len(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            community_of: (0..n as u32).collect(),
            k: n,
        }
    }

    pub fn whole(n: usize) -> Self {
        Partition {
            community_of: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    /// Partition given by explicit parts, which must cover `0..n` exactly.
    pub fn from_parts(n: usize, parts: &[Vec<u32>]) -> Self {
        let mut raw = vec![u32::MAX; n];
        for (c, part) in parts.iter().enumerate() {
            for &v in part {
                assert_eq!(raw[v as usize], u32::MAX, "vertex {v} in two parts");
                raw[v as usize] = c as u32;
            }
        }
        assert!(raw.iter().all(|&c| c != u32::MAX), "parts do not cover all vertices");
        Partition::from_assignment(&raw)
    }

    pub fn community_of(&self, v: u32) -> u32 {
        self.community_of[v as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.community_of
    }

    pub fn num_communities(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.community_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.community_of.is_empty()
    }

    /// Vertex sets of every community, each sorted ascending.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &c) in self.community_of.iter().enumerate() {
            parts[c as usize].push(v as u32);
        }
        parts
    }
}

/// Per-community accounting of one partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionMetrics {
    pub modularity: f64,
    pub e_in: Vec<u64>,
    /// Cut edges leaving each community.
    pub e_out: Vec<u64>,
    /// Degree sum of each community.
    pub vol: Vec<u64>,
    /// Edges whose endpoints lie in different communities.
    pub inter_edges: u64,
    /// Endpoints of inter-community edges.
    pub inter_vertices: u64,
}

fn check(vig: &Vig, p: &Partition) -> Result<()> {
    assert_eq!(vig.num_vertices(), p.len(), "partition size does not match graph");
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// Exact modularity numerator `4m·Σe_in − Σvol²` (denominator `4m²`).
fn modularity_numerator(m: u64, e_in: &[u64], vol: &[u64]) -> i128 {
    let inside: i128 = e_in.iter().map(|&e| e as i128).sum();
    let squares: i128 = vol.iter().map(|&v| (v as i128) * (v as i128)).sum();
    4 * m as i128 * inside - squares
}

pub(crate) fn ratio_to_f64(num: i128, den: i128) -> f64 {
    num as f64 / den as f64
}

pub fn partition_metrics(vig: &Vig, p: &Partition) -> Result<PartitionMetrics> {
    check(vig, p)?;
    let k = p.num_communities();
    let mut e_in = vec![0u64; k];
    let mut e_out = vec![0u64; k];
    let mut vol = vec![0u64; k];
    let mut boundary = vec![false; vig.num_vertices()];
    let mut inter_edges = 0u64;
    for v in 0..vig.num_vertices() as u32 {
        vol[p.community_of(v) as usize] += vig.degree(v) as u64;
    }
    for (u, v) in vig.edges() {
        let (cu, cv) = (p.community_of(u), p.community_of(v));
        if cu == cv {
            e_in[cu as usize] += 1;
        } else {
            e_out[cu as usize] += 1;
            e_out[cv as usize] += 1;
            inter_edges += 1;
            boundary[u as usize] = true;
            boundary[v as usize] = true;
        }
    }
    let m = vig.num_edges() as u64;
    let num = modularity_numerator(m, &e_in, &vol);
    Ok(PartitionMetrics {
        modularity: ratio_to_f64(num, 4 * (m as i128) * (m as i128)),
        e_in,
        e_out,
        vol,
        inter_edges,
        inter_vertices: boundary.iter().filter(|&&b| b).count() as u64,
    })
}

/// Newman–Girvan modularity of `p` on `vig`.
pub fn modularity(vig: &Vig, p: &Partition) -> Result<f64> {
    partition_metrics(vig, p).map(|m| m.modularity)
}

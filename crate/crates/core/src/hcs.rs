//! Hierarchical community structure: the tree obtained by running Louvain
//! on a graph, then again on every community's induced subgraph, until a
//! community no longer splits.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::community::{louvain, partition_metrics, Partition, PartitionMetrics};
use crate::error::{Error, Result};
use crate::seed;
use crate::vig::Vig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeConfig {
    pub seed: u64,
    /// Nodes at this depth are leaves (root has depth 1).
    pub max_depth: usize,
    /// Nodes with at most this many vertices are leaves.
    pub min_size: usize,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            seed: 0,
            max_depth: 64,
            min_size: 1,
        }
    }
}

impl DecomposeConfig {
    pub fn with_seed(seed: u64) -> Self {
        DecomposeConfig {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HcsNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Sorted vertex ids of the original graph.
    pub vertices: Vec<u32>,
    pub children: Vec<usize>,
    /// Metrics of this node's split, on its induced subgraph. `None` for leaves.
    pub metrics: Option<PartitionMetrics>,
    pub seed: u64,
}

impl HcsNode {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn community_degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Modularity of the node's split; 0 for leaves (the trivial partition).
    pub fn modularity(&self) -> f64 {
        self.metrics.as_ref().map_or(0.0, |m| m.modularity)
    }

    pub fn inter_edges(&self) -> u64 {
        self.metrics.as_ref().map_or(0, |m| m.inter_edges)
    }

    pub fn inter_vertices(&self) -> u64 {
        self.metrics.as_ref().map_or(0, |m| m.inter_vertices)
    }

    /// `2·|E_IC| / |H|`.
    pub fn expansion_upper_report(&self) -> f64 {
        2.0 * self.inter_edges() as f64 / self.size() as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HcsTree {
    pub nodes: Vec<HcsNode>,
    pub config: DecomposeConfig,
    /// Hash of the decomposed graph.
    pub fingerprint: u64,
    pub num_vertices: usize,
}

pub fn graph_fingerprint(vig: &Vig) -> u64 {
    let mut h = seed::mix64(vig.num_vertices() as u64);
    for (u, v) in vig.edges() {
        h = seed::mix64(h ^ ((u as u64) << 32 | v as u64));
    }
    h
}

/// Builds the HCS tree of `vig`. Node ids follow breadth-first order.
pub fn decompose(vig: &Vig, config: DecomposeConfig) -> Result<HcsTree> {
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut nodes = vec![HcsNode {
        id: 0,
        parent: None,
        depth: 1,
        vertices: (0..vig.num_vertices() as u32).collect(),
        children: Vec::new(),
        metrics: None,
        seed: config.seed,
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let parts = split(vig, &nodes[id], &config)?;
        let Some((metrics, parts)) = parts else {
            continue;
        };
        let (depth, node_seed) = (nodes[id].depth, nodes[id].seed);
        for (i, vertices) in parts.into_iter().enumerate() {
            let child = nodes.len();
            nodes.push(HcsNode {
                id: child,
                parent: Some(id),
                depth: depth + 1,
                vertices,
                children: Vec::new(),
                metrics: None,
                seed: seed::derive(node_seed, i as u64),
            });
            nodes[id].children.push(child);
            queue.push_back(child);
        }
        nodes[id].metrics = metrics;
    }
    Ok(HcsTree {
        nodes,
        config,
        fingerprint: graph_fingerprint(vig),
        num_vertices: vig.num_vertices(),
    })
}

type Split = Option<(Option<PartitionMetrics>, Vec<Vec<u32>>)>;

/// Children of a node, or `None` when it is a leaf.
fn split(vig: &Vig, node: &HcsNode, config: &DecomposeConfig) -> Result<Split> {
    if node.depth >= config.max_depth || node.size() <= config.min_size || node.size() < 2 {
        return Ok(None);
    }
    let sub = vig.induced(&node.vertices);
    if sub.num_edges() == 0 {
        // No edges: every vertex is its own singleton leaf.
        let parts = node.vertices.iter().map(|&v| vec![v]).collect();
        return Ok(Some((None, parts)));
    }
    let mut partition = louvain(&sub, node.seed, 1.0)?;
    let isolated = (0..sub.num_vertices() as u32).filter(|&v| sub.degree(v) == 0).count();
    let mut metrics = partition_metrics(&sub, &partition)?;
    if partition.num_communities() - isolated < 2 || metrics.modularity <= 0.0 {
        if isolated == 0 {
            return Ok(None);
        }
        // Peel off isolated vertices as singletons; the rest stays together.
        let assignment: Vec<u32> = (0..sub.num_vertices() as u32)
            .map(|v| if sub.degree(v) == 0 { v + 1 } else { 0 })
            .collect();
        partition = Partition::from_assignment(&assignment);
        metrics = partition_metrics(&sub, &partition)?;
    }
    let parts = partition
        .parts()
        .into_iter()
        .map(|part| part.into_iter().map(|i| node.vertices[i as usize]).collect())
        .collect();
    Ok(Some((Some(metrics), parts)))
}

/// Per-node quantities that can be averaged over a tree level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeMetric {
    Size,
    Degree,
    Modularity,
    InterEdges,
    InterVertices,
    ExpansionUpperReport,
}

impl NodeMetric {
    pub fn of(self, node: &HcsNode) -> f64 {
        match self {
            NodeMetric::Size => node.size() as f64,
            NodeMetric::Degree => node.community_degree() as f64,
            NodeMetric::Modularity => node.modularity(),
            NodeMetric::InterEdges => node.inter_edges() as f64,
            NodeMetric::InterVertices => node.inter_vertices() as f64,
            NodeMetric::ExpansionUpperReport => node.expansion_upper_report(),
        }
    }
}

/// A level mean; `present` is false when the level has no nodes (value 0).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelValue {
    pub value: f64,
    pub present: bool,
}

impl LevelValue {
    pub const ABSENT: LevelValue = LevelValue {
        value: 0.0,
        present: false,
    };

    pub fn present(value: f64) -> Self {
        LevelValue {
            value,
            present: true,
        }
    }
}

impl HcsTree {
    pub fn root(&self) -> &HcsNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &HcsNode {
        &self.nodes[id]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &HcsNode> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    /// Deepest level present.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn nodes_at(&self, depth: usize) -> impl Iterator<Item = &HcsNode> {
        self.nodes.iter().filter(move |n| n.depth == depth)
    }

    /// Arithmetic mean of `metric` over the nodes at `depth`.
    pub fn level_aggregate(&self, depth: usize, metric: NodeMetric) -> LevelValue {
        let (sum, count) = self
            .nodes_at(depth)
            .fold((0.0, 0usize), |(s, c), n| (s + metric.of(n), c + 1));
        if count == 0 {
            LevelValue::ABSENT
        } else {
            LevelValue::present(sum / count as f64)
        }
    }

    /// Community of every vertex at the leaf level.
    pub fn leaf_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.num_vertices];
        for leaf in self.leaves() {
            for &v in &leaf.vertices {
                out[v as usize] = leaf.id;
            }
        }
        out
    }

    /// JSON export; vertex lists, when included, use DIMACS variable numbers.
    pub fn to_json(&self, include_vertices: bool) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| {
                let mut obj = json!({
                    "id": n.id,
                    "depth": n.depth,
                    "size": n.size(),
                    "degree": n.community_degree(),
                    "modularity": n.modularity(),
                    "interEdges": n.inter_edges(),
                    "interVars": n.inter_vertices(),
                    "children": n.children,
                });
                if include_vertices {
                    obj["vertices"] = json!(n.vertices.iter().map(|v| v + 1).collect::<Vec<_>>());
                }
                obj
            })
            .collect();
        json!({
            "root": 0,
            "fingerprint": format!("{:016x}", self.fingerprint),
            "config": {
                "seed": self.config.seed,
                "maxDepth": self.config.max_depth,
                "minSize": self.config.min_size,
            },
            "nodes": nodes,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hcs {\n  node [shape=box];\n");
        for n in &self.nodes {
            writeln!(
                out,
                "  n{} [label=\"#{} size={} Q={:.3}\"];",
                n.id,
                n.id,
                n.size(),
                n.modularity()
            )
            .unwrap();
        }
        for n in &self.nodes {
            for c in &n.children {
                writeln!(out, "  n{} -> n{};", n.id, c).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

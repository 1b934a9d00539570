//! Generator for formulas with a planted perfect `c`-ary community tree.
//!
//! Leaves are blocks of `ℓ` variables filled with random width-`k` clauses.
//! Each level groups `c` communities into a super-community and joins them
//! with bridge clauses whose `k` variables come from `k` distinct
//! sub-communities, drawn from a fixed per-sub-community pool containing an
//! `iv` fraction of its variables. Bridge clauses are budgeted first; leaf
//! clauses fill the rest of the `round(cvr·n)` clause budget.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cnf::{Clause, Cnf, Literal, Origin};
use crate::error::{Error, Result};

/// Upper bound on generated variable counts.
const MAX_VARS: usize = 1 << 26;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Height `h` of the planted tree (number of bridge levels).
    pub depth: u32,
    /// Number of sub-communities `c` per super-community.
    pub degree: usize,
    /// Variables `ℓ` per leaf community.
    pub leaf_size: usize,
    /// Width `k` of every clause.
    pub clause_width: usize,
    pub cvr: f64,
    /// Power-law exponent for variable choice inside leaves; uniform if absent.
    #[serde(default)]
    pub powerlaw_beta: Option<f64>,
    /// Bridge clauses per super-community, as a fraction of its size.
    pub bridge_fraction: f64,
    /// Fraction of each sub-community's variables eligible for bridges.
    pub inter_var_fraction: f64,
    pub seed: u64,
}

impl GenParams {
    /// Defaults for pseudo-industrial instances: 4-ary tree, 16-variable
    /// leaves, 3-CNF, few bridges.
    pub fn pseudo_industrial(depth: u32, seed: u64) -> Self {
        GenParams {
            depth,
            degree: 4,
            leaf_size: 16,
            clause_width: 3,
            cvr: 4.0,
            powerlaw_beta: None,
            bridge_fraction: 0.02,
            inter_var_fraction: 0.5,
            seed,
        }
    }

    pub fn num_vars(&self) -> Result<usize> {
        let mut n = self.leaf_size;
        for _ in 0..self.depth {
            n = n
                .checked_mul(self.degree)
                .filter(|&n| n <= MAX_VARS)
                .ok_or_else(|| Error::BadParams("instance too large".into()))?;
        }
        Ok(n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadParams(m));
        if self.degree < 2 {
            return bad(format!("degree must be at least 2, got {}", self.degree));
        }
        if self.leaf_size < 2 {
            return bad(format!("leaf_size must be at least 2, got {}", self.leaf_size));
        }
        if self.clause_width < 2 {
            return bad(format!("clause_width must be at least 2, got {}", self.clause_width));
        }
        if self.depth > 0 && self.clause_width > self.degree {
            return bad(format!(
                "clause_width {} exceeds degree {}",
                self.clause_width, self.degree
            ));
        }
        if self.clause_width > self.leaf_size {
            return bad(format!(
                "clause_width {} exceeds leaf_size {}",
                self.clause_width, self.leaf_size
            ));
        }
        if !(self.cvr > 0.0 && self.cvr.is_finite()) {
            return bad(format!("cvr must be positive, got {}", self.cvr));
        }
        if !(self.bridge_fraction >= 0.0 && self.bridge_fraction.is_finite()) {
            return bad(format!("bridge_fraction must be non-negative, got {}", self.bridge_fraction));
        }
        if !(self.inter_var_fraction > 0.0 && self.inter_var_fraction <= 1.0) {
            return bad(format!(
                "inter_var_fraction must lie in (0, 1], got {}",
                self.inter_var_fraction
            ));
        }
        if self.inter_var_fraction * (self.leaf_size as f64) < 1.0 {
            return bad("inter_var_fraction * leaf_size must be at least 1".into());
        }
        if let Some(beta) = self.powerlaw_beta {
            if !beta.is_finite() || beta < 0.0 {
                return bad(format!("powerlaw_beta must be non-negative, got {beta}"));
            }
        }
        self.num_vars().map(|_| ())
    }

    /// Bridge clauses per super-community at each level `1..=h`.
    fn bridges_per_super(&self, level: u32) -> usize {
        let s = self.leaf_size * self.degree.pow(level);
        (self.bridge_fraction * s as f64).floor() as usize
    }
}

/// One community of the planted tree: a contiguous block of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedNode {
    pub depth: usize,
    /// First vertex (0-based; variable `first + 1`).
    pub first: u32,
    pub size: usize,
    pub children: Vec<usize>,
}

impl PlantedNode {
    pub fn vertices(&self) -> Vec<u32> {
        (self.first..self.first + self.size as u32).collect()
    }

    pub fn contains(&self, v: u32) -> bool {
        v >= self.first && v < self.first + self.size as u32
    }
}

/// Perfect `c`-ary tree, nodes in breadth-first order, root at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedTree {
    pub nodes: Vec<PlantedNode>,
}

impl PlantedTree {
    fn perfect(depth: u32, degree: usize, leaf_size: usize) -> Self {
        let n = leaf_size * degree.pow(depth);
        let mut nodes = vec![PlantedNode {
            depth: 1,
            first: 0,
            size: n,
            children: Vec::new(),
        }];
        let mut frontier = vec![0usize];
        for _ in 0..depth {
            let mut next = Vec::new();
            for &p in &frontier {
                let (first, size, depth) = (nodes[p].first, nodes[p].size / degree, nodes[p].depth);
                for j in 0..degree {
                    let id = nodes.len();
                    nodes.push(PlantedNode {
                        depth: depth + 1,
                        first: first + (j * size) as u32,
                        size,
                        children: Vec::new(),
                    });
                    nodes[p].children.push(id);
                    next.push(id);
                }
            }
            frontier = next;
        }
        PlantedTree { nodes }
    }

    pub fn leaves(&self) -> impl Iterator<Item = &PlantedNode> {
        self.nodes.iter().filter(|n| n.children.is_empty())
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(1) - 1
    }

    pub fn nodes_at(&self, depth: usize) -> impl Iterator<Item = &PlantedNode> {
        self.nodes.iter().filter(move |n| n.depth == depth)
    }

    /// Index of the leaf holding every vertex.
    pub fn leaf_index(&self) -> Vec<usize> {
        let n = self.nodes[0].size;
        let mut out = vec![0; n];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.children.is_empty() {
                for v in node.vertices() {
                    out[v as usize] = i;
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.nodes
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    json!({
                        "id": i,
                        "depth": n.depth,
                        "firstVar": n.first + 1,
                        "size": n.size,
                        "children": n.children,
                    })
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance {
    pub cnf: Cnf,
    pub planted: PlantedTree,
    pub params: GenParams,
    /// Bridge clauses added at each level `1..=h`.
    pub bridge_clauses: Vec<usize>,
}

impl PlantedInstance {
    pub fn sidecar_json(&self) -> Value {
        json!({
            "generator": "planted-hcs",
            "params": self.params,
            "numVars": self.cnf.num_vars,
            "numClauses": self.cnf.num_clauses(),
            "bridgeClausesPerLevel": self.bridge_clauses,
            "planted": self.planted.to_json(),
        })
    }
}

pub fn generate(params: &GenParams) -> Result<PlantedInstance> {
    params.validate()?;
    let n = params.num_vars()?;
    let (c, l, k, h) = (params.degree, params.leaf_size, params.clause_width, params.depth);
    let num_leaves = c.pow(h);
    let budget = (params.cvr * n as f64).round() as usize;

    let bridge_clauses: Vec<usize> = (1..=h)
        .map(|i| c.pow(h - i) * params.bridges_per_super(i))
        .collect();
    let total_bridges: usize = bridge_clauses.iter().sum();
    if total_bridges > budget {
        return Err(Error::InfeasibleBudget {
            bridges: total_bridges,
            budget,
        });
    }
    let leaf_total = budget - total_bridges;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut clauses: Vec<Clause> = Vec::with_capacity(budget);
    let sampler = match params.powerlaw_beta {
        Some(beta) => Some(
            WeightedIndex::new((1..=l).map(|r| (r as f64).powf(-beta)))
                .map_err(|e| Error::BadParams(e.to_string()))?,
        ),
        None => None,
    };

    for leaf in 0..num_leaves {
        let first = (leaf * l) as u32;
        let count = leaf_total / num_leaves + usize::from(leaf < leaf_total % num_leaves);
        for _ in 0..count {
            let picks: Vec<usize> = match &sampler {
                None => index::sample(&mut rng, l, k).into_vec(),
                Some(dist) => {
                    let mut picks = Vec::with_capacity(k);
                    while picks.len() < k {
                        let r = dist.sample(&mut rng);
                        if !picks.contains(&r) {
                            picks.push(r);
                        }
                    }
                    picks
                }
            };
            clauses.push(random_polarities(&mut rng, picks.iter().map(|&p| first + p as u32)));
        }
    }

    for level in 1..=h {
        let sub_size = l * c.pow(level - 1);
        let pool_size = ((params.inter_var_fraction * sub_size as f64).floor() as usize).max(1);
        let per_super = params.bridges_per_super(level);
        for sup in 0..c.pow(h - level) {
            let sup_first = sup * sub_size * c;
            let pools: Vec<Vec<u32>> = (0..c)
                .map(|j| {
                    let base = (sup_first + j * sub_size) as u32;
                    index::sample(&mut rng, sub_size, pool_size)
                        .into_iter()
                        .map(|i| base + i as u32)
                        .collect()
                })
                .collect();
            for _ in 0..per_super {
                let subs = index::sample(&mut rng, c, k).into_vec();
                let vars: Vec<u32> = subs
                    .iter()
                    .map(|&j| pools[j][rng.random_range(0..pools[j].len())])
                    .collect();
                clauses.push(random_polarities(&mut rng, vars.into_iter()));
            }
        }
    }

    clauses.shuffle(&mut rng);
    Ok(PlantedInstance {
        cnf: Cnf::new(n, clauses, Origin::Generated)?,
        planted: PlantedTree::perfect(h, c, l),
        params: params.clone(),
        bridge_clauses,
    })
}

pub(crate) fn random_polarities(rng: &mut impl Rng, vertices: impl Iterator<Item = u32>) -> Clause {
    Clause::new(vertices.map(|v| Literal::from_var(v + 1, rng.random_bool(0.5))).collect::<Vec<_>>())
}

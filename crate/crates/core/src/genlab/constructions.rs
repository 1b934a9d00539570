//! Graph and formula constructions: ring of cliques, disjoint copies, rooted
//! clique products, uniform random k-CNF and Tseitin parity formulas.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::planted::random_polarities;
use crate::cnf::{Clause, Cnf, Literal, Origin};
use crate::error::{Error, Result};
use crate::vig::Vig;

/// `q` cliques of size `c`; clique `i` holds vertices `i·c .. i·c + c` and
/// its canonical vertex `i·c` is joined to the canonical vertex of clique
/// `i + 1 (mod q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingOfCliques {
    pub vig: Vig,
    /// One binary clause per edge, random polarities.
    pub cnf: Cnf,
    pub cliques: Vec<Vec<u32>>,
}

impl RingOfCliques {
    pub fn sidecar_json(&self) -> Value {
        json!({
            "generator": "ring-of-cliques",
            "numVars": self.cnf.num_vars,
            "numClauses": self.cnf.num_clauses(),
            "cliques": self.cliques.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

pub fn ring_of_cliques(q: usize, c: usize, seed: u64) -> Result<RingOfCliques> {
    if q < 3 {
        return Err(Error::BadParams(format!("ring needs at least 3 cliques, got {q}")));
    }
    if c < 3 {
        return Err(Error::BadParams(format!("cliques need at least 3 vertices, got {c}")));
    }
    let n = q * c;
    let mut edges = Vec::with_capacity(q * c * (c - 1) / 2 + q);
    let cliques: Vec<Vec<u32>> = (0..q)
        .map(|i| ((i * c) as u32..((i + 1) * c) as u32).collect())
        .collect();
    for clique in &cliques {
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    for i in 0..q {
        edges.push(((i * c) as u32, (((i + 1) % q) * c) as u32));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = edges
        .iter()
        .map(|&(u, v)| random_polarities(&mut rng, [u, v].into_iter()))
        .collect();
    Ok(RingOfCliques {
        vig: Vig::from_edges(n, edges),
        cnf: Cnf::new(n, clauses, Origin::Constructed)?,
        cliques,
    })
}

/// `t` variable-disjoint copies of `f`; copy `i` shifts variables by `i·n`.
pub fn disjoint_copies(f: &Cnf, t: usize) -> Result<Cnf> {
    if t == 0 {
        return Err(Error::BadParams("need at least one copy".into()));
    }
    let n = f.num_vars;
    let clauses = (0..t)
        .flat_map(|i| {
            f.clauses.iter().map(move |c| {
                Clause::new(c.literals().iter().map(|l| {
                    Literal::from_var(l.var() + (i * n) as u32, l.is_positive())
                }))
            })
        })
        .collect();
    Cnf::new(n * t, clauses, Origin::Constructed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootedProduct {
    pub cnf: Cnf,
    /// Block `i`: vertex `i` (the original variable) followed by its `p − 1`
    /// fresh vertices.
    pub blocks: Vec<Vec<u32>>,
}

/// Attaches to every variable of `f` a block of `p` variables (the variable
/// itself plus `p − 1` fresh ones) carrying a positive `t`-CNF in which every
/// pair of block variables shares a clause.
pub fn rooted_clique_product(f: &Cnf, p: usize, t: usize) -> Result<RootedProduct> {
    if p < 2 || t < 2 || t > p {
        return Err(Error::BadParams(format!(
            "rooted product needs 2 <= t <= p, got p={p}, t={t}"
        )));
    }
    let n = f.num_vars;
    let block_clauses = pair_cover(p, t);
    let mut clauses = f.clauses.clone();
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let mut block = vec![i as u32];
        block.extend((0..p - 1).map(|j| (n + i * (p - 1) + j) as u32));
        for clause in &block_clauses {
            clauses.push(Clause::new(
                clause.iter().map(|&j| Literal::positive(block[j] + 1)),
            ));
        }
        blocks.push(block);
    }
    Ok(RootedProduct {
        cnf: Cnf::new(n * p, clauses, Origin::Constructed)?,
        blocks,
    })
}

/// `t`-subsets of `0..p` covering every pair, at most `C(p, 2)` of them.
fn pair_cover(p: usize, t: usize) -> Vec<Vec<usize>> {
    let mut covered = vec![vec![false; p]; p];
    let mut out = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            if covered[a][b] {
                continue;
            }
            let mut clause = vec![a, b];
            let mut next = b;
            while clause.len() < t {
                next = (next + 1) % p;
                if !clause.contains(&next) {
                    clause.push(next);
                }
            }
            for &x in &clause {
                for &y in &clause {
                    covered[x][y] = true;
                }
            }
            out.push(clause);
        }
    }
    out
}

/// `round(cvr·n)` clauses, each on `k` distinct uniformly chosen variables
/// with uniform polarities.
pub fn random_kcnf(n: usize, k: usize, cvr: f64, seed: u64) -> Result<Cnf> {
    if k == 0 || k > n {
        return Err(Error::BadParams(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if !(cvr > 0.0 && cvr.is_finite()) {
        return Err(Error::BadParams(format!("cvr must be positive, got {cvr}")));
    }
    let m = (cvr * n as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(&mut rng, n, k);
            random_polarities(&mut rng, vars.into_iter().map(|v| v as u32))
        })
        .collect();
    Cnf::new(n, clauses, Origin::Generated)
}

/// Largest vertex degree accepted by [`tseitin`]; a degree-`d` vertex
/// contributes `2^(d−1)` clauses.
pub const TSEITIN_MAX_DEGREE: usize = 8;

/// Charge vector with a single odd vertex (vertex 0).
pub fn default_charges(n: usize) -> Vec<bool> {
    let mut charges = vec![false; n];
    if let Some(first) = charges.first_mut() {
        *first = true;
    }
    charges
}

/// Tseitin formula of a connected graph: one variable per edge (edges in
/// ascending order), and for every vertex the clauses forcing the XOR of its
/// incident edge variables to equal its charge. Clause order is shuffled
/// with `seed`.
pub fn tseitin(graph: &Vig, charges: &[bool], seed: u64) -> Result<Cnf> {
    let n = graph.num_vertices();
    if charges.len() != n {
        return Err(Error::BadParams(format!(
            "{} charges for {n} vertices",
            charges.len()
        )));
    }
    if graph.num_edges() == 0 {
        return Err(Error::BadParams("graph has no edges".into()));
    }
    if !graph.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Some(v) = (0..n as u32).find(|&v| graph.degree(v) > TSEITIN_MAX_DEGREE) {
        return Err(Error::DegreeTooHigh {
            vertex: v as usize,
            degree: graph.degree(v),
            limit: TSEITIN_MAX_DEGREE,
        });
    }
    let edges: Vec<(u32, u32)> = graph.edges().collect();
    let var_of = |u: u32, v: u32| -> u32 {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).unwrap() as u32 + 1
    };
    let mut clauses = Vec::new();
    for v in 0..n as u32 {
        let incident: Vec<u32> = graph.neighbors(v).iter().map(|&u| var_of(v, u)).collect();
        let d = incident.len();
        for bits in 0u32..(1 << d) {
            // Exclude every assignment of the wrong parity.
            if (bits.count_ones() % 2 == 1) == charges[v as usize] {
                continue;
            }
            clauses.push(Clause::new(
                incident
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| Literal::from_var(x, bits >> j & 1 == 0)),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    clauses.shuffle(&mut rng);
    Cnf::new(edges.len(), clauses, Origin::Constructed)
}

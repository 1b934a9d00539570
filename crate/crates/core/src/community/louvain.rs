//! Two-phase Louvain: seeded local moving followed by aggregation into a
//! weighted quotient graph, repeated until aggregation is a fixed point.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Partition;
use crate::error::{Error, Result};
use crate::vig::Vig;

/// Guard against floating-point cycling when `resolution != 1`.
const MAX_PASSES_PER_LEVEL: usize = 10_000;

/// Weighted graph with integer edge weights and self-loops.
struct Quotient {
    adj: Vec<Vec<(u32, u64)>>,
    self_loops: Vec<u64>,
    strength: Vec<u64>,
    total: u64,
}

impl Quotient {
    fn from_vig(vig: &Vig) -> Self {
        let adj: Vec<Vec<(u32, u64)>> = (0..vig.num_vertices() as u32)
            .map(|v| vig.neighbors(v).iter().map(|&u| (u, 1)).collect())
            .collect();
        let strength = adj.iter().map(|l| l.len() as u64).collect();
        Quotient {
            self_loops: vec![0; adj.len()],
            adj,
            strength,
            total: vig.num_edges() as u64,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Modularity of `comm` (dense ids) on this weighted graph.
    fn modularity(&self, comm: &[u32], resolution: f64) -> f64 {
        let k = comm.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut inside = vec![0u64; k];
        let mut tot = vec![0u64; k];
        for v in 0..self.len() {
            let c = comm[v] as usize;
            tot[c] += self.strength[v];
            inside[c] += 2 * self.self_loops[v];
            for &(u, w) in &self.adj[v] {
                if comm[u as usize] as usize == c {
                    inside[c] += w;
                }
            }
        }
        // `inside` counts each internal edge twice.
        let two_m = 2.0 * self.total as f64;
        inside
            .iter()
            .zip(&tot)
            .map(|(&i, &t)| i as f64 / two_m - resolution * (t as f64 / two_m).powi(2))
            .sum()
    }

    fn aggregate(&self, comm: &[u32], k: usize) -> Quotient {
        let mut self_loops = vec![0u64; k];
        let mut strength = vec![0u64; k];
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); k];
        for v in 0..self.len() {
            let c = comm[v] as usize;
            strength[c] += self.strength[v];
            self_loops[c] += self.self_loops[v];
            for &(u, w) in &self.adj[v] {
                let d = comm[u as usize];
                if d as usize == c {
                    // Seen from both endpoints.
                    if (u as usize) > v {
                        self_loops[c] += w;
                    }
                } else {
                    rows[c].push((d, w));
                }
            }
        }
        let adj = rows
            .into_iter()
            .map(|mut row| {
                row.sort_unstable_by_key(|&(d, _)| d);
                let mut merged: Vec<(u32, u64)> = Vec::with_capacity(row.len());
                for (d, w) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == d => last.1 += w,
                        _ => merged.push((d, w)),
                    }
                }
                merged
            })
            .collect();
        Quotient {
            adj,
            self_loops,
            strength,
            total: self.total,
        }
    }
}

/// Outcome of a Louvain run with its modularity trajectory.
#[derive(Clone, Debug)]
pub struct LouvainRun {
    /// Top-level partition projected onto the input vertices.
    pub partition: Partition,
    /// Modularity after every local-moving pass, across all levels.
    pub pass_modularity: Vec<f64>,
    /// Modularity at the end of every level.
    pub level_modularity: Vec<f64>,
}

/// Runs Louvain and returns the final (top-level) partition.
pub fn louvain(vig: &Vig, seed: u64, resolution: f64) -> Result<Partition> {
    louvain_traced(vig, seed, resolution).map(|r| r.partition)
}

pub fn louvain_traced(vig: &Vig, seed: u64, resolution: f64) -> Result<LouvainRun> {
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    assert!(resolution > 0.0 && resolution.is_finite(), "resolution must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Quotient::from_vig(vig);
    let mut membership: Vec<u32> = (0..vig.num_vertices() as u32).collect();
    let mut pass_modularity = Vec::new();
    let mut level_modularity = Vec::new();

    loop {
        let (comm, moved) = local_moving(&graph, resolution, &mut rng, &mut pass_modularity);
        let dense = Partition::from_assignment(&comm);
        level_modularity.push(*pass_modularity.last().unwrap());
        if !moved || dense.num_communities() == graph.len() {
            break;
        }
        for m in membership.iter_mut() {
            *m = dense.community_of(*m);
        }
        graph = graph.aggregate(dense.assignment(), dense.num_communities());
    }

    Ok(LouvainRun {
        partition: Partition::from_assignment(&membership),
        pass_modularity,
        level_modularity,
    })
}

/// Moves single nodes to the neighbouring community with the largest
/// strictly positive gain until a full pass changes nothing.
fn local_moving(
    graph: &Quotient,
    resolution: f64,
    rng: &mut ChaCha8Rng,
    trace: &mut Vec<f64>,
) -> (Vec<u32>, bool) {
    let n = graph.len();
    let two_m = 2.0 * graph.total as f64;
    let mut comm: Vec<u32> = (0..n as u32).collect();
    let mut tot: Vec<f64> = graph.strength.iter().map(|&s| s as f64).collect();
    let mut link = vec![0u64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut moved_any = false;

    for _ in 0..MAX_PASSES_PER_LEVEL {
        order.shuffle(rng);
        let mut moved = false;
        for &v in &order {
            let v = v as usize;
            let home = comm[v];
            let k_v = graph.strength[v] as f64;
            for &(u, w) in &graph.adj[v] {
                let c = comm[u as usize];
                if link[c as usize] == 0 {
                    touched.push(c);
                }
                link[c as usize] += w;
            }
            tot[home as usize] -= k_v;

            // Gain of joining c, scaled by 2m²: 2m·k_in(c) − γ·tot(c)·k_v.
            let score = |c: u32, link: &[u64]| {
                two_m * link[c as usize] as f64 - resolution * tot[c as usize] * k_v
            };
            let mut best = home;
            let mut best_score = score(home, &link);
            for &c in &touched {
                let s = score(c, &link);
                if s > best_score || (s == best_score && best != home && c < best) {
                    best = c;
                    best_score = s;
                }
            }

            tot[best as usize] += k_v;
            if best != home {
                comm[v] = best;
                moved = true;
            }
            for &c in &touched {
                link[c as usize] = 0;
            }
            touched.clear();
        }
        trace.push(graph.modularity(&comm, resolution));
        if !moved {
            break;
        }
        moved_any = true;
    }
    (comm, moved_any)
}

//! Exhaustive modularity maximizers for small graphs.

use super::{ratio_to_f64, Partition};
use crate::error::{Error, Result};
use crate::vig::Vig;

/// Largest graph accepted by [`brute_force_best_partition`] (Bell(12) ≈ 4.2M).
pub const BRUTE_FORCE_LIMIT: usize = 12;
/// Largest graph accepted by [`best_two_partition`].
pub const TWO_PARTITION_LIMIT: usize = 24;

struct Search<'a> {
    vig: &'a Vig,
    m4: i64,
    assign: Vec<u32>,
    vol: Vec<i64>,
    inside: i64,
    squares: i64,
    /// Per-depth scratch: neighbours of v among earlier vertices, by community.
    counts: Vec<Vec<i64>>,
    best_score: i64,
    best_k: usize,
    best: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, v: usize, k: usize) {
        let n = self.vig.num_vertices();
        if v == n {
            // 4m²·Q
            let score = self.m4 * self.inside - self.squares;
            if score > self.best_score || (score == self.best_score && k < self.best_k) {
                self.best_score = score;
                self.best_k = k;
                self.best.copy_from_slice(&self.assign);
            }
            return;
        }
        let deg = self.vig.degree(v as u32) as i64;
        let mut counts = std::mem::take(&mut self.counts[v]);
        counts.clear();
        counts.resize(k + 1, 0);
        for &u in self.vig.neighbors(v as u32) {
            if (u as usize) < v {
                counts[self.assign[u as usize] as usize] += 1;
            }
        }
        // Restricted growth strings in lexicographic order.
        for (c, &links) in counts.iter().enumerate() {
            let old = self.vol[c];
            self.inside += links;
            self.squares += (2 * old + deg) * deg;
            self.vol[c] = old + deg;
            self.assign[v] = c as u32;
            self.run(v + 1, k.max(c + 1));
            self.vol[c] = old;
            self.squares -= (2 * old + deg) * deg;
            self.inside -= links;
        }
        self.counts[v] = counts;
    }
}

/// Exact modularity maximizer over all set partitions.
///
/// Ties go to fewer communities, then to the lexicographically smallest
/// assignment vector.
pub fn brute_force_best_partition(vig: &Vig) -> Result<(Partition, f64)> {
    let n = vig.num_vertices();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = vig.num_edges() as i64;
    let mut search = Search {
        vig,
        m4: 4 * m,
        assign: vec![0; n],
        vol: vec![0; n + 1],
        inside: 0,
        squares: 0,
        counts: vec![Vec::new(); n],
        best_score: i64::MIN,
        best_k: usize::MAX,
        best: vec![0; n],
    };
    search.run(0, 0);
    let q = ratio_to_f64(search.best_score as i128, 4 * (m as i128) * (m as i128));
    Ok((Partition::from_assignment(&search.best), q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoPartition {
    /// The smaller side, sorted.
    pub side: Vec<u32>,
    pub modularity: f64,
}

/// Best modularity over partitions `{S, V∖S}` with both sides nonempty.
///
/// `S` is reported as the side with at most `n/2` vertices; ties go to the
/// smaller `|S|`, then to the lexicographically smallest `S`.
pub fn best_two_partition(vig: &Vig) -> Result<TwoPartition> {
    let n = vig.num_vertices();
    if n > TWO_PARTITION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: TWO_PARTITION_LIMIT,
        });
    }
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let m2 = 2 * vig.num_edges() as i64;
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| vig.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let deg: Vec<i64> = vig.degrees().into_iter().map(|d| d as i64).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // Vertex n-1 stays outside the enumerated mask, so each unordered pair
    // {S, V∖S} is visited once.
    let (mut mask, mut vol, mut cut) = (0u32, 0i64, 0i64);
    let mut best: Option<(i64, u32)> = None;
    for i in 1u32..(1u32 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let toward = (adj[v] & (mask & !bit)).count_ones() as i64;
        if mask & bit == 0 {
            cut += deg[v] - 2 * toward;
            vol += deg[v];
        } else {
            cut -= deg[v] - 2 * toward;
            vol -= deg[v];
        }
        mask ^= bit;
        // 2m²·Q = 2m·vol − vol² − 2m·cut
        let score = m2 * vol - vol * vol - m2 * cut;
        let side = smaller_side(mask, full ^ mask);
        let better = match best {
            None => true,
            Some((s, b)) => score > s || (score == s && side_precedes(side, b)),
        };
        if better {
            best = Some((score, side));
        }
    }
    let (score, side) = best.expect("n >= 2 when m >= 1");
    let m = vig.num_edges() as i128;
    Ok(TwoPartition {
        side: (0..n as u32).filter(|v| side >> v & 1 == 1).collect(),
        modularity: ratio_to_f64(score as i128, 2 * m * m),
    })
}

fn smaller_side(a: u32, b: u32) -> u32 {
    if side_precedes(a, b) {
        a
    } else {
        b
    }
}

/// Order on vertex sets: size first, then lexicographic on sorted members.
pub(crate) fn side_precedes(a: u32, b: u32) -> bool {
    let (ca, cb) = (a.count_ones(), b.count_ones());
    if ca != cb {
        return ca < cb;
    }
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

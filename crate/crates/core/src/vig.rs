//! The variable incidence graph (VIG): one vertex per variable, an edge
//! between two variables whenever some clause contains both.
//!
//! Vertices are 0-based: vertex `v` stands for DIMACS variable `v + 1`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cnf::Cnf;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vig {
    adjacency: Vec<Vec<u32>>,
    num_edges: usize,
}

impl Vig {
    pub fn empty(num_vertices: usize) -> Self {
        Vig {
            adjacency: vec![Vec::new(); num_vertices],
            num_edges: 0,
        }
    }

    /// Builds a graph from an edge list; self-loops and repeats are dropped.
    pub fn from_edges(num_vertices: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adjacency = vec![Vec::new(); num_vertices];
        for (u, v) in edges {
            assert!(
                (u as usize) < num_vertices && (v as usize) < num_vertices,
                "edge ({u}, {v}) out of range"
            );
            if u != v {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        Vig::from_raw_adjacency(adjacency)
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<u32>>) -> Self {
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Vig {
            adjacency,
            num_edges: twice / 2,
        }
    }

    /// Each clause of width `w` contributes a `w`-clique; polarity is ignored.
    pub fn build(cnf: &Cnf) -> Self {
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); cnf.num_vars];
        let mut vars: Vec<u32> = Vec::new();
        for clause in &cnf.clauses {
            vars.clear();
            vars.extend(clause.vars().map(|v| v - 1));
            vars.sort_unstable();
            vars.dedup();
            for (i, &u) in vars.iter().enumerate() {
                for &v in &vars[i + 1..] {
                    adjacency[u as usize].push(v);
                    adjacency[v as usize].push(u);
                }
            }
        }
        Vig::from_raw_adjacency(adjacency)
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by `vertices` (must be sorted and distinct). Vertex
    /// `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[u32]) -> Vig {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut adjacency = Vec::with_capacity(vertices.len());
        let mut twice = 0;
        for &v in vertices {
            let mut list = Vec::new();
            // Both lists are sorted: a merge keeps the result sorted.
            let (mut i, mut j) = (0, 0);
            let nbrs = self.neighbors(v);
            while i < nbrs.len() && j < vertices.len() {
                match nbrs[i].cmp(&vertices[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        list.push(j as u32);
                        i += 1;
                        j += 1;
                    }
                }
            }
            twice += list.len();
            adjacency.push(list);
        }
        Vig {
            adjacency,
            num_edges: twice / 2,
        }
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as u32);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() <= 1 || self.connected_components().len() == 1
    }

    /// Graphviz rendering; vertices are labelled with their DIMACS variable.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph vig {\n");
        for v in 0..self.num_vertices() {
            writeln!(out, "  {};", v + 1).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {} -- {};", u + 1, v + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Origin;

    fn cnf(n: usize, clauses: &[&[i32]]) -> Cnf {
        Cnf::from_ints(n, clauses, Origin::Constructed).unwrap()
    }

    #[test]
    fn clause_induces_clique() {
        let g = Vig::build(&cnf(3, &[&[1, 2, 3]]));
        assert_eq!(g.num_edges(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn repeated_pairs_collapse() {
        let g = Vig::build(&cnf(3, &[&[1, 2], &[2, 3], &[1, 2]]));
        assert_eq!(g.num_edges(), 2);
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn polarity_is_ignored() {
        let g = Vig::build(&cnf(3, &[&[1, -2], &[2, 3], &[3, 1]]));
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn isolated_variables_stay() {
        let g = Vig::build(&cnf(5, &[&[1, 2]]));
        assert_eq!(g.num_vertices(), 5);
        assert_eq!(g.connected_components().len(), 4);
        assert_eq!(Vig::build(&cnf(0, &[])).num_vertices(), 0);
    }

    #[test]
    fn components() {
        let two = Vig::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let comps = two.connected_components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let empty = Vig::empty(4);
        assert_eq!(empty.connected_components().len(), 4);

        let bridged = Vig::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(bridged.connected_components(), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Vig::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let h = g.induced(&[0, 1, 4]);
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn dot_output() {
        let g = Vig::from_edges(2, [(0, 1)]);
        assert_eq!(g.to_dot(), "graph vig {\n  1;\n  2;\n  1 -- 2;\n}\n");
    }
}

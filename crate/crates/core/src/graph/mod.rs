//! Simple graphs, edge-coloured multigraphs and the exact combinatorial bounds on them.

mod independence;
mod json;
mod multigraph;
mod structure;
mod symmetry;

use std::collections::BTreeSet;

use crate::error::{invalid, Result};

pub use independence::{independence_number, independence_number_with_cap, DEFAULT_INDEPENDENCE_CAP};
pub use json::{EdgeRecord, GraphFile, SIMPLE_COLOUR};
pub use multigraph::{colour_isomorphic, ColouredMultigraph};
pub use structure::{
    has_odd_hole_or_antihole, has_odd_hole_or_antihole_with_cap, is_complete_multipartite, Multipartition,
    DEFAULT_HOLE_CAP,
};
pub use symmetry::{
    automorphisms, burnside_count, colour_names, enumerate_colourings, ColouringClass, ColouringGroup, EnumerationOptions,
    DEFAULT_COLOURING_BUDGET,
};

/// Unordered vertex pair, always stored with `u < v`.
pub type Edge = (usize, usize);

pub(crate) fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    /// Fails on self-loops, out-of-range endpoints and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            if !set.insert(ordered(u, v)) {
                return invalid(format!("duplicate edge ({u}, {v})"));
            }
        }
        Ok(Self::from_set(n, set))
    }

    pub(crate) fn from_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_set(n, BTreeSet::new())
    }

    pub fn complete(n: usize) -> Self {
        Self::from_set(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect())
    }

    /// `C_n` with edges `{i, i+1 mod n}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return invalid(format!("cycle needs at least 3 vertices, got {n}"));
        }
        Ok(Self::from_set(n, (0..n).map(|i| ordered(i, (i + 1) % n)).collect()))
    }

    /// Path with `n` vertices and `n − 1` edges.
    pub fn path(n: usize) -> Self {
        Self::from_set(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_set(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    /// Neighbourhood as a bitmask. Only meaningful for `n <= 64`.
    pub(crate) fn neighbour_mask(&self, v: usize) -> u64 {
        self.neighbours(v).fold(0u64, |m, u| m | (1u64 << u))
    }

    pub fn complement(&self) -> Self {
        let mut set = BTreeSet::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adj[u][v] {
                    set.insert((u, v));
                }
            }
        }
        Self::from_set(self.n, set)
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in increasing vertex order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return invalid(format!("vertex {bad} outside 0..{}", self.n));
        }
        let mut set = BTreeSet::new();
        for (a, &u) in sorted.iter().enumerate() {
            for (b, &v) in sorted.iter().enumerate().skip(a + 1) {
                if self.adj[u][v] {
                    set.insert((a, b));
                }
            }
        }
        Ok(Self::from_set(sorted.len(), set))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbours(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Whether the graph is a single cycle through all vertices (in any order).
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && (0..self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let s = side[v].unwrap();
                for u in self.neighbours(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!s);
                            stack.push(u);
                        }
                        Some(t) if t == s => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Image of the graph under the vertex map `v ↦ perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_set(self.n, self.edges.iter().map(|&(u, v)| ordered(perm[u], perm[v])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_constructor() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3));
        let c7 = Graph::cycle(7).unwrap();
        let expected: BTreeSet<Edge> = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 6)].into_iter().collect();
        assert_eq!(c7.edge_set(), &expected);
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn complement_counts_and_involution() {
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(c7.complement().edge_count(), 14);
        assert_eq!(c7.complement().complement(), c7);
        // C5 is self-complementary: the map i -> 2i mod 5 sends C5 onto its complement.
        let c5 = Graph::cycle(5).unwrap();
        let perm: Vec<usize> = (0..5).map(|i| (2 * i) % 5).collect();
        assert_eq!(c5.permuted(&perm), c5.complement());
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(&[0, 1, 2]).unwrap(), Graph::path(3));
        assert_eq!(c5.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap(), c5);
        assert!(c5.induced_subgraph(&[0, 5]).is_err());

        let anti = Graph::cycle(7).unwrap().complement();
        let sub = anti.induced_subgraph(&[0, 2, 3, 4]).unwrap();
        let picked = [0usize, 2, 3, 4];
        // Oracle: two vertices of the antihole are adjacent iff their cyclic distance is not 1.
        for a in 0..4 {
            for b in (a + 1)..4 {
                let d = (picked[b] + 7 - picked[a]) % 7;
                let adjacent = d != 1 && d != 6;
                assert_eq!(sub.has_edge(a, b), adjacent, "pair {a},{b}");
            }
        }
        assert!(sub.has_edge(0, 1) && sub.has_edge(0, 2) && sub.has_edge(1, 3));
        assert_eq!(sub.edge_count(), 4);
    }

    #[test]
    fn components_and_bipartiteness() {
        let g = Graph::new(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(Graph::cycle(6).unwrap().is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(Graph::cycle(6).unwrap().is_cycle());
        assert!(!Graph::path(4).is_cycle());
    }
}

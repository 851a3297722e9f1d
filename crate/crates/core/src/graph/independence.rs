//! Exact independence number by branch and bound.
//!
//! Searches for a maximum clique of the complement. Candidates are bounded by a greedy
//! colouring of the complement, i.e. a greedy clique cover of the original graph.

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_INDEPENDENCE_CAP: usize = 64;

pub fn independence_number(g: &Graph) -> Result<usize> {
    independence_number_with_cap(g, DEFAULT_INDEPENDENCE_CAP)
}

pub fn independence_number_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    Ok(maximum_independent_set_with_cap(g, cap)?.len())
}

impl Graph {
    /// A maximum independent set, sorted.
    pub fn maximum_independent_set(&self) -> Result<Vec<usize>> {
        maximum_independent_set_with_cap(self, DEFAULT_INDEPENDENCE_CAP)
    }
}

fn maximum_independent_set_with_cap(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    let n = g.n();
    let cap = cap.min(64);
    if n > cap {
        return Err(Error::ResourceLimit(format!("independence number limited to {cap} vertices, got {n}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Bit position k holds vertex order[k]; higher-degree vertices come first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut non_adj = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && !g.has_edge(order[a], order[b]) {
                non_adj[a] |= 1u64 << b;
            }
        }
    }
    let mut search = Search { non_adj: &non_adj, best: Vec::new(), current: Vec::new() };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.expand(all);
    let mut set: Vec<usize> = search.best.iter().map(|&k| order[k]).collect();
    set.sort_unstable();
    Ok(set)
}

struct Search<'a> {
    non_adj: &'a [u64],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut candidates: u64) {
        let (vertices, bounds) = self.colour_sort(candidates);
        for idx in (0..vertices.len()).rev() {
            if self.current.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = vertices[idx];
            self.current.push(v);
            let next = candidates & self.non_adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates &= !(1u64 << v);
        }
    }

    /// Greedy partition of `candidates` into cliques of the original graph.
    /// Returns vertices in class order with the running class count as a bound.
    fn colour_sort(&self, candidates: u64) -> (Vec<usize>, Vec<usize>) {
        let mut vertices = Vec::with_capacity(candidates.count_ones() as usize);
        let mut bounds = Vec::with_capacity(vertices.capacity());
        let mut remaining = candidates;
        let mut class = 0;
        while remaining != 0 {
            class += 1;
            let mut open = remaining;
            while open != 0 {
                let v = open.trailing_zeros() as usize;
                open &= !(1u64 << v);
                // Vertices independent of v (in the original graph) cannot share its clique.
                open &= !self.non_adj[v];
                remaining &= !(1u64 << v);
                vertices.push(v);
                bounds.push(class);
            }
        }
        (vertices, bounds)
    }
}

#[cfg(test)]
pub(crate) fn brute_force_alpha(g: &Graph) -> usize {
    let n = g.n();
    let masks: Vec<u64> = (0..n).map(|v| g.neighbour_mask(v)).collect();
    (0u64..(1u64 << n))
        .filter(|&s| (0..n).all(|v| s & (1 << v) == 0 || masks[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_fixtures() {
        assert_eq!(independence_number(&Graph::cycle(5).unwrap()).unwrap(), 2);
        assert_eq!(brute_force_alpha(&Graph::cycle(7).unwrap()), 3);
        assert_eq!(independence_number(&Graph::cycle(7).unwrap()).unwrap(), 3);
        let anti = Graph::cycle(7).unwrap().complement();
        assert_eq!(brute_force_alpha(&anti), 2);
        assert_eq!(independence_number(&anti).unwrap(), 2);
        assert_eq!(independence_number(&Graph::complete(6)).unwrap(), 1);
        assert_eq!(independence_number(&Graph::empty(9)).unwrap(), 9);
        assert_eq!(independence_number(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(independence_number(&Graph::empty(65)), Err(Error::ResourceLimit(_))));
        assert!(matches!(independence_number_with_cap(&Graph::empty(10), 8), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn sixty_four_vertices() {
        let g = Graph::cycle(64).unwrap();
        assert_eq!(independence_number(&g).unwrap(), 32);
    }

    #[test]
    fn returned_set_is_independent() {
        let g = Graph::cycle(9).unwrap().complement();
        let s = g.maximum_independent_set().unwrap();
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                assert!(!g.has_edge(u, v));
            }
        }
    }

    fn random_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut k = 0;
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(g in random_graph()) {
            prop_assert_eq!(independence_number(&g).unwrap(), brute_force_alpha(&g));
        }
    }
}

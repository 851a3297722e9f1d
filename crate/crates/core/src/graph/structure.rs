//! Forbidden induced subgraphs: odd holes, odd antiholes and `P̄₃`.

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_HOLE_CAP: usize = 16;

/// Outcome of the complete-multipartite test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multipartition {
    /// The parts (maximal independent sets), each sorted, ordered by smallest vertex.
    Parts(Vec<Vec<usize>>),
    /// A sorted triple inducing exactly one edge.
    Forbidden([usize; 3]),
}

impl Multipartition {
    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        match self {
            Self::Parts(p) => Some(p),
            Self::Forbidden(_) => None,
        }
    }

    pub fn witness(&self) -> Option<[usize; 3]> {
        match self {
            Self::Parts(_) => None,
            Self::Forbidden(w) => Some(*w),
        }
    }
}

/// Decides whether `g` is complete multipartite, i.e. has no induced `P̄₃`.
///
/// Non-adjacency must be an equivalence relation; its classes are the parts.
/// On failure the lexicographically smallest `P̄₃` triple is returned.
pub fn is_complete_multipartite(g: &Graph) -> Multipartition {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut ok = true;
    'outer: for v in 0..n {
        if part_of[v] != usize::MAX {
            continue;
        }
        let part: Vec<usize> = (0..n).filter(|&u| u == v || !g.has_edge(u, v)).collect();
        for &u in &part {
            if part_of[u] != usize::MAX {
                ok = false;
                break 'outer;
            }
        }
        for (i, &a) in part.iter().enumerate() {
            for &b in &part[i + 1..] {
                if g.has_edge(a, b) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        for &u in &part {
            part_of[u] = parts.len();
        }
        parts.push(part);
    }
    if ok {
        ok = (0..n).all(|a| ((a + 1)..n).all(|b| g.has_edge(a, b) == (part_of[a] != part_of[b])));
    }
    if ok {
        return Multipartition::Parts(parts);
    }
    Multipartition::Forbidden(smallest_single_edge_triple(g).expect("non-multipartite graph has a P3-bar"))
}

fn smallest_single_edge_triple(g: &Graph) -> Option<[usize; 3]> {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let edges = g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8;
                if edges == 1 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn has_odd_hole_or_antihole(g: &Graph) -> Result<Option<Vec<usize>>> {
    has_odd_hole_or_antihole_with_cap(g, DEFAULT_HOLE_CAP)
}

/// Smallest vertex set (ties: smallest bitmask) inducing an odd cycle of length ≥ 5
/// or the complement of one. Exhaustive over subsets, hence the cap.
pub fn has_odd_hole_or_antihole_with_cap(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > cap.min(30) {
        return Err(Error::ResourceLimit(format!("hole search limited to {cap} vertices, got {n}")));
    }
    let masks: Vec<u32> = (0..n).map(|v| g.neighbour_mask(v) as u32).collect();
    for size in (5..=n).step_by(2) {
        let mut subset: u32 = (1u32 << size) - 1;
        let limit: u64 = 1u64 << n;
        while (subset as u64) < limit {
            if induces_cycle(&masks, subset, false) || induces_cycle(&masks, subset, true) {
                return Ok(Some((0..n).filter(|&v| subset & (1 << v) != 0).collect()));
            }
            // Next subset of the same popcount (Gosper's hack).
            let c = subset & subset.wrapping_neg();
            let r = subset.wrapping_add(c);
            if r == 0 {
                break;
            }
            subset = (((r ^ subset) >> 2) / c) | r;
        }
    }
    Ok(None)
}

fn induces_cycle(masks: &[u32], subset: u32, complemented: bool) -> bool {
    let nbrs = |v: usize| -> u32 {
        let m = if complemented { !masks[v] & !(1u32 << v) } else { masks[v] };
        m & subset
    };
    let mut rest = subset;
    let mut degree_ok = true;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if nbrs(v).count_ones() != 2 {
            degree_ok = false;
            break;
        }
    }
    if !degree_ok {
        return false;
    }
    // 2-regular: a single cycle iff connected.
    let start = subset.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = nbrs(v) & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == subset
}

#[cfg(test)]
pub(crate) fn brute_force_p3bar_free(g: &Graph) -> bool {
    smallest_single_edge_triple(g).is_none()
}

//! Structural operations on coloured multigraphs and coloured cycles.
//!
//! Cycles are always taken with vertices in cyclic order, so that edge `k` is
//! `{k, k+1 mod n}` and a colouring is its colour word.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{ordered, ColouredMultigraph, Edge};

/// Copy of `cm` without the `colour` edge `{u, v}`. The colour itself stays listed even
/// if it loses its last edge.
pub fn remove_edge(cm: &ColouredMultigraph, u: usize, v: usize, colour: usize) -> Result<ColouredMultigraph> {
    if colour >= cm.colour_count() {
        return invalid(format!("colour index {colour} out of range"));
    }
    let mut out = cm.clone();
    if u >= cm.n() || v >= cm.n() || !out.remove_edge_in_place(u, v, colour) {
        return invalid(format!("no edge ({u}, {v}) of colour {:?}", cm.colours()[colour]));
    }
    Ok(out)
}

/// Moves every edge of `c2` into `c1` and drops `c2` from the colour list. Pairs present
/// in both end up as a single `c1` edge.
pub fn merge_colours(cm: &ColouredMultigraph, c1: usize, c2: usize) -> Result<ColouredMultigraph> {
    let k = cm.colour_count();
    if c1 >= k || c2 >= k {
        return invalid(format!("colour index out of range: {c1}, {c2} with {k} colours"));
    }
    if c1 == c2 {
        return invalid("cannot merge a colour with itself");
    }
    let mut colours = Vec::with_capacity(k - 1);
    let mut edges: Vec<BTreeSet<Edge>> = Vec::with_capacity(k - 1);
    for c in 0..k {
        if c == c2 {
            continue;
        }
        let mut set = cm.colour_edges(c).clone();
        if c == c1 {
            set.extend(cm.colour_edges(c2).iter().copied());
        }
        colours.push(cm.colours()[c].clone());
        edges.push(set);
    }
    Ok(ColouredMultigraph::from_parts(cm.n(), colours, edges))
}

/// Party dimensions matching [`merge_colours`]: the merged party carries `d1 · d2` so
/// that every representation of the original still fits.
pub fn merged_dims(dims: &[usize], c1: usize, c2: usize) -> Result<Vec<usize>> {
    if c1 >= dims.len() || c2 >= dims.len() || c1 == c2 {
        return invalid(format!("cannot merge parties {c1} and {c2} of {}", dims.len()));
    }
    Ok(dims
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != c2)
        .map(|(c, &d)| if c == c1 { d * dims[c2] } else { d })
        .collect())
}

/// Deletes `i` and `i+1` from a coloured cycle whose edges `(i−1, i)`, `(i, i+1)`,
/// `(i+1, i+2)` form a maximal run of one colour `A`, and joins `i−1` to `i+2` in `A`.
/// Surviving vertices keep their relative order.
pub fn plus_one_reduce(cm: &ColouredMultigraph, i: usize) -> Result<ColouredMultigraph> {
    let word = simple_cycle_word(cm)?;
    let n = word.len();
    if n < 5 {
        return invalid(format!("reducing a {n}-cycle would leave fewer than 3 vertices"));
    }
    if i >= n {
        return invalid(format!("vertex {i} outside 0..{n}"));
    }
    let at = |k: isize| word[(i as isize + k).rem_euclid(n as isize) as usize];
    let a = at(0);
    if at(-1) != a || at(1) != a {
        return invalid(format!("edges ({}, {i}), ({i}, {}), ({}, {}) do not share a colour", (i + n - 1) % n, (i + 1) % n, (i + 1) % n, (i + 2) % n));
    }
    if at(-2) == a || at(2) == a {
        return invalid(format!("the {}-run through vertex {i} is longer than three edges", cm.colours()[a]));
    }
    // Rotate so the run sits at edges n−3, n−2, n−1 of the rotated word, drop the two
    // middle vertices, then rotate back so the survivors keep their labels' order.
    let start = (i + 2) % n;
    let rotated: Vec<usize> = (0..n).map(|k| word[(start + k) % n]).collect();
    let mut reduced = rotated[..n - 3].to_vec();
    reduced.push(a);
    // Rotated position 0 is vertex i+2; find where original vertex order starts.
    let survivors: Vec<usize> = (0..n - 2).map(|k| (start + k) % n).collect();
    let offset = (0..n - 2).min_by_key(|&k| survivors[k]).unwrap();
    let m = n - 2;
    let back: Vec<usize> = (0..m).map(|k| reduced[(offset + k) % m]).collect();
    let names: Vec<&str> = cm.colours().iter().map(String::as_str).collect();
    ColouredMultigraph::coloured_cycle(&back, &names)
}

/// Subdivides the cycle edge `{u, v}` with a new vertex; both halves keep the edge's
/// colours. For `v = u + 1` the new vertex is `u + 1` and later vertices shift up; for
/// the closing edge `{n−1, 0}` it is appended as vertex `n`.
pub fn break_edge(cm: &ColouredMultigraph, u: usize, v: usize) -> Result<ColouredMultigraph> {
    let n = cm.n();
    if !is_ordered_cycle(cm) {
        return invalid("break_edge needs a cycle with vertices in cyclic order");
    }
    if u >= n || v >= n {
        return invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
    }
    let (lo, hi) = ordered(u, v);
    let colours = cm.colours_between(lo, hi);
    let closing = lo == 0 && hi == n - 1;
    if colours.is_empty() || !(hi == lo + 1 || closing) {
        return invalid(format!("({u}, {v}) is not an edge of the cycle"));
    }
    let (w, shift) = if closing { (n, n) } else { (hi, hi) };
    let relabel = |x: usize| if x >= shift { x + 1 } else { x };
    let mut edges: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); cm.colour_count()];
    for (a, b, c) in cm.edges() {
        if (a, b) == (lo, hi) {
            let (x, y) = if closing { (hi, lo) } else { (lo, hi) };
            edges[c].insert(ordered(relabel(x), w));
            edges[c].insert(ordered(w, relabel(y)));
        } else {
            edges[c].insert(ordered(relabel(a), relabel(b)));
        }
    }
    Ok(ColouredMultigraph::from_parts(n + 1, cm.colours().to_vec(), edges))
}

/// Maximal monochromatic runs of a coloured cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathProfile {
    /// Run lengths in cyclic order, starting at the first edge that begins a new run.
    pub lengths: Vec<usize>,
    /// Colour of each run.
    pub colours: Vec<usize>,
    /// Edge index where the first run starts.
    pub start: usize,
    /// Number of runs of length two.
    pub t: usize,
    /// Number of runs of length one.
    pub ones: usize,
}

impl PathProfile {
    pub fn max_length(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }
}

pub fn path_profile(cm: &ColouredMultigraph) -> Result<PathProfile> {
    let word = simple_cycle_word(cm)?;
    Ok(word_profile(&word))
}

/// Profile of a cyclic colour word. A monochromatic word is one run of length `n`.
pub fn word_profile(word: &[usize]) -> PathProfile {
    let n = word.len();
    let start = (0..n).find(|&k| word[k] != word[(k + n - 1) % n]);
    let Some(start) = start else {
        return PathProfile {
            lengths: vec![n],
            colours: word.first().map(|&c| vec![c]).unwrap_or_default(),
            start: 0,
            t: 0,
            ones: usize::from(n == 1),
        };
    };
    let mut lengths = Vec::new();
    let mut colours = Vec::new();
    for k in 0..n {
        let c = word[(start + k) % n];
        if k > 0 && colours.last() == Some(&c) {
            *lengths.last_mut().unwrap() += 1;
        } else {
            lengths.push(1);
            colours.push(c);
        }
    }
    let t = lengths.iter().filter(|&&l| l == 2).count();
    let ones = lengths.iter().filter(|&&l| l == 1).count();
    PathProfile { lengths, colours, start, t, ones }
}

fn simple_cycle_word(cm: &ColouredMultigraph) -> Result<Vec<usize>> {
    cm.cycle_word().ok_or_else(|| {
        crate::Error::InvalidArgument("expected a cycle 0..n−1 in cyclic order without multiple edges".into())
    })
}

fn is_ordered_cycle(cm: &ColouredMultigraph) -> bool {
    let n = cm.n();
    let shadow = cm.shadow();
    n >= 3 && shadow.edge_count() == n && (0..n).all(|k| shadow.has_edge(k, (k + 1) % n))
}

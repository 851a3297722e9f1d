use std::collections::BTreeSet;

use super::{ordered, Edge, Graph};
use crate::error::{invalid, Result};

/// Edge-coloured multigraph: one simple graph ("factor") per colour on a shared vertex set.
///
/// The same pair may carry several colours; within a colour it appears at most once.
/// Colours keep their insertion order, which is also the party order of any
/// representation built on top of the multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColouredMultigraph {
    n: usize,
    colours: Vec<String>,
    edges: Vec<BTreeSet<Edge>>,
}

impl ColouredMultigraph {
    pub fn new(n: usize, colours: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &colours {
            if !seen.insert(c.as_str()) {
                return invalid(format!("colour {c:?} listed twice"));
            }
        }
        let edges = vec![BTreeSet::new(); colours.len()];
        Ok(Self { n, colours, edges })
    }

    /// Convenience constructor from `(u, v, colour index)` triples.
    pub fn from_edges(n: usize, colours: &[&str], edges: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut cm = Self::new(n, colours.iter().map(|s| s.to_string()).collect())?;
        for (u, v, c) in edges {
            cm.add_edge(u, v, c)?;
        }
        Ok(cm)
    }

    /// Single-colour multigraph whose only factor is `g`.
    pub fn from_graph(g: &Graph, colour: &str) -> Self {
        Self { n: g.n(), colours: vec![colour.to_string()], edges: vec![g.edge_set().clone()] }
    }

    /// Cycle `0 − 1 − … − (n−1) − 0` where edge `{k, k+1}` gets colour `word[k]`.
    pub fn coloured_cycle(word: &[usize], colours: &[&str]) -> Result<Self> {
        let n = word.len();
        if n < 3 {
            return invalid(format!("coloured cycle needs at least 3 edges, got {n}"));
        }
        Self::from_edges(n, colours, word.iter().enumerate().map(|(k, &c)| (k, (k + 1) % n, c)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, colour: usize) -> Result<()> {
        if colour >= self.colours.len() {
            return invalid(format!("colour index {colour} out of range"));
        }
        if u >= self.n || v >= self.n {
            return invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{}", self.n));
        }
        if u == v {
            return invalid(format!("self-loop at vertex {u}"));
        }
        if !self.edges[colour].insert(ordered(u, v)) {
            return invalid(format!("duplicate edge ({u}, {v}) in colour {:?}", self.colours[colour]));
        }
        Ok(())
    }

    pub(crate) fn remove_edge_in_place(&mut self, u: usize, v: usize, colour: usize) -> bool {
        self.edges[colour].remove(&ordered(u, v))
    }

    pub(crate) fn from_parts(n: usize, colours: Vec<String>, edges: Vec<BTreeSet<Edge>>) -> Self {
        debug_assert_eq!(colours.len(), edges.len());
        Self { n, colours, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }

    pub fn colour_index(&self, name: &str) -> Option<usize> {
        self.colours.iter().position(|c| c == name)
    }

    pub fn colour_edges(&self, colour: usize) -> &BTreeSet<Edge> {
        &self.edges[colour]
    }

    pub fn has_edge(&self, u: usize, v: usize, colour: usize) -> bool {
        self.edges[colour].contains(&ordered(u, v))
    }

    /// Colours carried by the pair `{u, v}`, in colour order.
    pub fn colours_between(&self, u: usize, v: usize) -> Vec<usize> {
        let e = ordered(u, v);
        (0..self.colours.len()).filter(|&c| self.edges[c].contains(&e)).collect()
    }

    /// All `(u, v, colour)` triples, by colour then pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(c, set)| set.iter().map(move |&(u, v)| (u, v, c)))
    }

    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(BTreeSet::len).sum()
    }

    /// The simple graph of one colour.
    pub fn factor(&self, colour: usize) -> Graph {
        Graph::from_set(self.n, self.edges[colour].clone())
    }

    /// Colourless graph with an edge wherever any colour has one.
    pub fn shadow(&self) -> Graph {
        Graph::from_set(self.n, self.edges.iter().flatten().copied().collect())
    }

    pub fn has_multiple_edges(&self) -> bool {
        self.total_edges() != self.shadow().edge_count()
    }

    /// For a multigraph whose shadow is the cycle `0 − 1 − … − (n−1)` without multiple
    /// edges, the colour of edge `{k, k+1}` for each `k`.
    pub fn cycle_word(&self) -> Option<Vec<usize>> {
        if self.n < 3 || self.total_edges() != self.n {
            return None;
        }
        (0..self.n)
            .map(|k| {
                let cs = self.colours_between(k, (k + 1) % self.n);
                (cs.len() == 1).then(|| cs[0])
            })
            .collect()
    }

    /// Same multigraph with colour `c` renamed to `names[c]`.
    pub fn with_colour_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.colours.len() {
            return invalid("colour name list has the wrong length");
        }
        let mut out = Self::new(self.n, names)?;
        out.edges = self.edges.clone();
        Ok(out)
    }

    /// Reorders colours so that new colour `k` is old colour `order[k]`.
    pub fn reorder_colours(&self, order: &[usize]) -> Self {
        Self {
            n: self.n,
            colours: order.iter().map(|&c| self.colours[c].clone()).collect(),
            edges: order.iter().map(|&c| self.edges[c].clone()).collect(),
        }
    }

    /// Image under the vertex map `v ↦ perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            colours: self.colours.clone(),
            edges: self
                .edges
                .iter()
                .map(|set| set.iter().map(|&(u, v)| ordered(perm[u], perm[v])).collect())
                .collect(),
        }
    }
}

/// Whether some vertex bijection maps every colour class of `a` onto the
/// same-named colour class of `b`. Backtracking search; intended for small inputs.
pub fn colour_isomorphic(a: &ColouredMultigraph, b: &ColouredMultigraph) -> bool {
    if a.n() != b.n() || a.colour_count() != b.colour_count() {
        return false;
    }
    let mut colour_map = Vec::with_capacity(a.colour_count());
    for c in a.colours() {
        match b.colour_index(c) {
            Some(k) => colour_map.push(k),
            None => return false,
        }
    }
    for (ca, &cb) in colour_map.iter().enumerate() {
        if a.colour_edges(ca).len() != b.colour_edges(cb).len() {
            return false;
        }
    }
    let n = a.n();
    // Per-vertex signature: degree in each colour.
    let sig = |g: &ColouredMultigraph, v: usize, order: &dyn Fn(usize) -> usize| -> Vec<usize> {
        (0..g.colour_count())
            .map(|c| g.colour_edges(order(c)).iter().filter(|&&(x, y)| x == v || y == v).count())
            .collect()
    };
    let sig_a: Vec<Vec<usize>> = (0..n).map(|v| sig(a, v, &|c| c)).collect();
    let sig_b: Vec<Vec<usize>> = (0..n).map(|v| sig(b, v, &|c| colour_map[c])).collect();

    fn extend(
        a: &ColouredMultigraph,
        b: &ColouredMultigraph,
        colour_map: &[usize],
        sig_a: &[Vec<usize>],
        sig_b: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == a.n() {
            return true;
        }
        for w in 0..b.n() {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                colour_map
                    .iter()
                    .enumerate()
                    .all(|(ca, &cb)| a.has_edge(u, v, ca) == b.has_edge(map[u], w, cb))
            });
            if !consistent {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(a, b, colour_map, sig_a, sig_b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }

    extend(a, b, &colour_map, &sig_a, &sig_b, &mut Vec::with_capacity(n), &mut vec![false; n])
}

//! Automorphisms and edge-colouring classes up to symmetry.
//!
//! A colouring of `g` with `k` colours is a word over `0..k` indexed by the edges of `g`
//! in sorted order. The acting group is `Aut(g) × S_k`; the class representative is the
//! lexicographically least word in the orbit.

use super::{ordered, ColouredMultigraph, Edge, Graph};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_COLOURING_BUDGET: u64 = 1 << 22;
const DEFAULT_GROUP_CAP: usize = 1 << 16;

/// All automorphisms of `g` as vertex maps, the identity first.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    automorphisms_with_cap(g, DEFAULT_GROUP_CAP)
}

pub fn automorphisms_with_cap(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(g, &degrees, &mut map, &mut used, &mut out, cap)?;
    Ok(out)
}

fn search(
    g: &Graph,
    degrees: &[usize],
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    let v = map.len();
    if v == g.n() {
        if out.len() >= cap {
            return Err(Error::ResourceLimit(format!("automorphism group larger than {cap}")));
        }
        out.push(map.clone());
        return Ok(());
    }
    for w in 0..g.n() {
        if used[w] || degrees[w] != degrees[v] {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(map[u], w)) {
            continue;
        }
        map.push(w);
        used[w] = true;
        search(g, degrees, map, used, out, cap)?;
        map.pop();
        used[w] = false;
    }
    Ok(())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `Aut(g) × S_k` acting on edge colourings of `g`.
#[derive(Debug, Clone)]
pub struct ColouringGroup {
    graph: Graph,
    edges: Vec<Edge>,
    colours: usize,
    /// `edge_perms[a][e]` is the index of the image of edge `e` under automorphism `a`.
    edge_perms: Vec<Vec<usize>>,
    colour_perms: Vec<Vec<usize>>,
}

impl ColouringGroup {
    pub fn new(g: &Graph, colours: usize) -> Result<Self> {
        if colours == 0 {
            return invalid("at least one colour is required");
        }
        if colours > 6 {
            return invalid(format!("colour permutation group too large for {colours} colours"));
        }
        let edges: Vec<Edge> = g.edges().collect();
        let index = |e: Edge| edges.binary_search(&e).expect("automorphism maps edges to edges");
        let edge_perms = automorphisms(g)?
            .into_iter()
            .map(|perm| edges.iter().map(|&(u, v)| index(ordered(perm[u], perm[v]))).collect())
            .collect();
        Ok(Self { graph: g.clone(), edges, colours, edge_perms, colour_perms: permutations(colours) })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    pub fn order(&self) -> usize {
        self.edge_perms.len() * self.colour_perms.len()
    }

    /// Image of `word` under group element `element` (`0..order()`).
    pub fn act(&self, element: usize, word: &[usize]) -> Vec<usize> {
        let ep = &self.edge_perms[element / self.colour_perms.len()];
        let cp = &self.colour_perms[element % self.colour_perms.len()];
        let mut out = vec![0; word.len()];
        for (e, &c) in word.iter().enumerate() {
            out[ep[e]] = cp[c];
        }
        out
    }

    /// Lexicographically least word in the orbit of `word`.
    pub fn canonical(&self, word: &[usize]) -> Vec<usize> {
        let mut best = word.to_vec();
        let mut img = vec![0; word.len()];
        for ep in &self.edge_perms {
            for cp in &self.colour_perms {
                for (e, &c) in word.iter().enumerate() {
                    img[ep[e]] = cp[c];
                }
                if img < best {
                    best.copy_from_slice(&img);
                }
            }
        }
        best
    }

    /// Number of group elements fixing `word`, or `None` if some element maps it to a
    /// smaller word (so `word` is not a representative).
    fn stabiliser_if_minimal(&self, word: &[usize], img: &mut [usize]) -> Option<usize> {
        let mut fixed = 0;
        for ep in &self.edge_perms {
            for cp in &self.colour_perms {
                for (e, &c) in word.iter().enumerate() {
                    img[ep[e]] = cp[c];
                }
                match (*img).cmp(word) {
                    std::cmp::Ordering::Less => return None,
                    std::cmp::Ordering::Equal => fixed += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        Some(fixed)
    }

    /// Multigraph with the edges of `g` coloured by `word`.
    pub fn multigraph(&self, word: &[usize], names: &[String]) -> ColouredMultigraph {
        let mut sets = vec![std::collections::BTreeSet::new(); self.colours];
        for (e, &c) in word.iter().enumerate() {
            sets[c].insert(self.edges[e]);
        }
        ColouredMultigraph::from_parts(self.graph.n(), names.to_vec(), sets)
    }

    /// Reads a colouring word off a multigraph whose shadow is this group's graph and
    /// which has no multiple edges.
    pub fn word_of(&self, cm: &ColouredMultigraph) -> Result<Vec<usize>> {
        if cm.colour_count() != self.colours || cm.n() != self.graph.n() {
            return invalid("multigraph does not match the colouring group");
        }
        if cm.has_multiple_edges() || cm.shadow() != self.graph {
            return invalid("multigraph is not a simple colouring of the group's graph");
        }
        Ok(self.edges.iter().map(|&(u, v)| cm.colours_between(u, v)[0]).collect())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Keep only colourings that use every colour.
    pub surjective: bool,
    /// Maximum number of raw colourings (`k^|E|`) to scan.
    pub budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { surjective: true, budget: DEFAULT_COLOURING_BUDGET }
    }
}

/// One orbit of colourings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouringClass {
    pub representative: ColouredMultigraph,
    /// The representative's colouring word (edges in sorted order).
    pub word: Vec<usize>,
    pub orbit_size: u64,
}

/// Default colour names: `A, B, C, …`.
pub fn colour_names(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
}

/// One representative per orbit of `k`-colourings of the edges of `g`, sorted by word.
pub fn enumerate_colourings(g: &Graph, k: usize, opts: EnumerationOptions) -> Result<Vec<ColouringClass>> {
    let group = ColouringGroup::new(g, k)?;
    let m = g.edge_count();
    let total = (k as u64).checked_pow(m as u32).filter(|&t| t <= opts.budget).ok_or_else(|| {
        Error::ResourceLimit(format!("{k}^{m} colourings exceed the budget of {}", opts.budget))
    })?;
    let names = colour_names(k);
    let order = group.order() as u64;
    let mut out = Vec::new();
    let mut word = vec![0usize; m];
    let mut img = vec![0usize; m];
    for step in 0..total {
        if step > 0 {
            // Base-k increment, most significant digit first, so words come in lex order.
            let mut pos = m;
            loop {
                pos -= 1;
                word[pos] += 1;
                if word[pos] < k {
                    break;
                }
                word[pos] = 0;
            }
        }
        if opts.surjective && !uses_all(&word, k) {
            continue;
        }
        if let Some(fixed) = group.stabiliser_if_minimal(&word, &mut img) {
            out.push(ColouringClass {
                representative: group.multigraph(&word, &names),
                word: word.clone(),
                orbit_size: order / fixed as u64,
            });
        }
    }
    Ok(out)
}

fn uses_all(word: &[usize], k: usize) -> bool {
    let mut seen = 0u64;
    for &c in word {
        seen |= 1 << c;
    }
    seen.count_ones() as usize == k
}

/// Number of orbits by Burnside's lemma, counting fixed words of every group element by
/// brute force. Independent of the orbit search in [`enumerate_colourings`], so it serves
/// as a check on it.
pub fn burnside_count(group: &ColouringGroup, surjective: bool, budget: u64) -> Result<u64> {
    let m = group.edges().len();
    let k = group.colours();
    let total = (k as u64)
        .checked_pow(m as u32)
        .and_then(|t| t.checked_mul(group.order() as u64))
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::ResourceLimit(format!("Burnside count over {k}^{m} words exceeds the budget")))?;
    let words = total / group.order() as u64;
    let mut fixed_total = 0u64;
    for el in 0..group.order() {
        let mut word = vec![0usize; m];
        for _ in 0..words {
            if (!surjective || uses_all(&word, k)) && group.act(el, &word) == word {
                fixed_total += 1;
            }
            let mut pos = 0;
            while pos < m {
                word[pos] += 1;
                if word[pos] < k {
                    break;
                }
                word[pos] = 0;
                pos += 1;
            }
        }
    }
    Ok(fixed_total / group.order() as u64)
}

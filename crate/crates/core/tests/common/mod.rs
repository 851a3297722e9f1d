//! Helpers shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use std::path::PathBuf;

use exgraph::bell::{BellScenario, BellWitness, EventLabel};
use exgraph::graph::{colour_names, ColouredMultigraph, Graph, GraphFile};
use rand::Rng;

pub fn fixture(name: &str) -> ColouredMultigraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    GraphFile::from_json(&text).and_then(|f| f.to_multigraph()).expect("fixture parses")
}

/// Up to 3 parties, 3 measurements per party and 3 outcomes per measurement.
pub fn random_scenario<R: Rng>(rng: &mut R) -> BellScenario {
    let p = rng.random_range(1..=3);
    let outcomes = (0..p)
        .map(|_| (0..rng.random_range(1..=3)).map(|_| rng.random_range(2..=3)).collect())
        .collect();
    BellScenario::new(colour_names(p), outcomes)
        .expect("generated scenarios are valid")
}

/// Between 2 and 9 events; each party is ignored with probability 0.2.
pub fn random_events<R: Rng>(rng: &mut R, scenario: &BellScenario) -> Vec<EventLabel> {
    let count = rng.random_range(2..=9);
    (0..count)
        .map(|_| {
            let settings = scenario
                .outcomes
                .iter()
                .map(|ms| {
                    if rng.random_bool(0.2) {
                        None
                    } else {
                        let x = rng.random_range(0..ms.len());
                        Some((x, rng.random_range(0..ms[x])))
                    }
                })
                .collect();
            EventLabel::new(settings)
        })
        .collect()
}

/// Toggles one random `(pair, colour)` edge.
pub fn perturb<R: Rng>(rng: &mut R, cm: &ColouredMultigraph) -> ColouredMultigraph {
    let n = cm.n();
    let u = rng.random_range(0..n);
    let mut v = rng.random_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    let c = rng.random_range(0..cm.colour_count());
    let mut edges: Vec<(usize, usize, usize)> = cm.edges().collect();
    let key = (u.min(v), u.max(v), c);
    match edges.iter().position(|&e| e == key) {
        Some(k) => {
            edges.remove(k);
        }
        None => edges.push(key),
    }
    let names: Vec<&str> = cm.colours().iter().map(String::as_str).collect();
    ColouredMultigraph::from_edges(n, &names, edges).expect("toggled edge is valid")
}

/// The witness names a connected component of its colour factor and the triple inside it
/// spans exactly one edge of that factor.
pub fn witness_is_valid(cm: &ColouredMultigraph, w: &BellWitness) -> bool {
    let factor: Graph = cm.factor(w.colour);
    let mut comp = w.component.clone();
    comp.sort_unstable();
    let is_component = factor.components().into_iter().any(|mut c| {
        c.sort_unstable();
        c == comp
    });
    let [a, b, c] = w.triple;
    let distinct = a != b && b != c && a != c;
    let inside = w.triple.iter().all(|x| comp.contains(x));
    let edges = [(a, b), (a, c), (b, c)].iter().filter(|&&(x, y)| factor.has_edge(x, y)).count();
    is_component && distinct && inside && edges == 1
}

/// The even and odd cycles, complete graphs, bipartite graphs and paths used by the
/// sandwich checks.
pub fn perfect_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [4, 6, 8] {
        out.push((format!("C{n}"), Graph::cycle(n).unwrap()));
    }
    for n in [2, 3, 5] {
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    for (a, b) in [(2, 3), (3, 3)] {
        out.push((format!("K{a},{b}"), Graph::complete_bipartite(a, b)));
    }
    out.push(("P5".into(), Graph::path(5)));
    out
}

//! Which coloured multigraphs describe events of a Bell scenario, and how to label them.
//!
//! A multigraph qualifies iff every connected component of every colour factor is complete
//! multipartite. Each such component (with at least one edge) is one measurement of the
//! colour's party and each of its parts is one outcome.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{is_complete_multipartite, ColouredMultigraph, Multipartition};

/// Parties with their measurements; `outcomes[party][measurement]` is the outcome count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellScenario {
    pub parties: Vec<String>,
    pub outcomes: Vec<Vec<usize>>,
}

impl BellScenario {
    pub fn new(parties: Vec<String>, outcomes: Vec<Vec<usize>>) -> Result<Self> {
        if parties.is_empty() {
            return invalid("a scenario needs at least one party");
        }
        if parties.len() != outcomes.len() {
            return invalid("one measurement list per party is required");
        }
        if outcomes.iter().flatten().any(|&o| o == 0) {
            return invalid("every measurement needs at least one outcome");
        }
        Ok(Self { parties, outcomes })
    }

    /// `p` parties, each with `m` measurements of `o` outcomes, parties named `A`, `B`, ...
    pub fn uniform(p: usize, m: usize, o: usize) -> Result<Self> {
        Self::new(crate::graph::colour_names(p), vec![vec![o; m]; p])
    }

    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    /// `(p, m, o)` when every party has `m` measurements with `o` outcomes each.
    pub fn shorthand(&self) -> Option<(usize, usize, usize)> {
        let m = self.outcomes[0].len();
        let o = *self.outcomes[0].first()?;
        let uniform = self.outcomes.iter().all(|ms| ms.len() == m && ms.iter().all(|&x| x == o));
        uniform.then_some((self.parties.len(), m, o))
    }
}

impl fmt::Display for BellScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((p, m, o)) = self.shorthand() {
            return write!(f, "({p},{m},{o})");
        }
        let parts: Vec<String> = self
            .parties
            .iter()
            .zip(&self.outcomes)
            .map(|(name, ms)| {
                let os: Vec<String> = ms.iter().map(|o| o.to_string()).collect();
                format!("{name}:[{}]", os.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Per party, the `(measurement, outcome)` of an event; `None` means the party's
/// measurement is ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventLabel {
    pub settings: Vec<Option<(usize, usize)>>,
}

impl EventLabel {
    pub fn new(settings: Vec<Option<(usize, usize)>>) -> Self {
        Self { settings }
    }

    pub fn get(&self, party: usize) -> Option<(usize, usize)> {
        self.settings.get(party).copied().flatten()
    }

    /// True when every party is ignored.
    pub fn is_empty(&self) -> bool {
        self.settings.iter().all(Option::is_none)
    }
}

/// The usual `a,b|x,y` notation, with `_` for ignored parties.
impl fmt::Display for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outs: Vec<String> = self.settings.iter().map(|s| s.map_or("_".into(), |(_, a)| a.to_string())).collect();
        let ins: Vec<String> = self.settings.iter().map(|s| s.map_or("_".into(), |(x, _)| x.to_string())).collect();
        write!(f, "{}|{}", outs.join(","), ins.join(","))
    }
}

/// Why a multigraph is not a Bell multigraph: `triple` induces `P̄₃` inside `component`
/// of the factor of `colour`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellWitness {
    pub colour: usize,
    pub component: Vec<usize>,
    pub triple: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BellDecision {
    Accept { scenario: BellScenario, labels: Vec<EventLabel> },
    Reject(BellWitness),
}

impl BellDecision {
    pub fn is_accept(&self) -> bool {
        matches!(self, BellDecision::Accept { .. })
    }

    pub fn witness(&self) -> Option<&BellWitness> {
        match self {
            BellDecision::Reject(w) => Some(w),
            BellDecision::Accept { .. } => None,
        }
    }
}

/// Accepts iff every component of every colour factor is complete multipartite.
///
/// On rejection the witness is the lexicographically smallest `(colour, triple)` with the
/// triple inside one component of that colour.
pub fn bell_check(cm: &ColouredMultigraph) -> BellDecision {
    let mut measurements: Vec<Vec<usize>> = Vec::with_capacity(cm.colour_count());
    let mut labels: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; cm.colour_count()]; cm.n()];
    for c in 0..cm.colour_count() {
        let factor = cm.factor(c);
        let mut outcome_counts = Vec::new();
        let mut best: Option<BellWitness> = None;
        for comp in factor.components() {
            if comp.len() < 2 {
                continue;
            }
            let sub = factor.induced_subgraph(&comp).expect("component vertices are in range");
            match is_complete_multipartite(&sub) {
                Multipartition::Parts(parts) => {
                    let x = outcome_counts.len();
                    outcome_counts.push(parts.len());
                    for (a, part) in parts.iter().enumerate() {
                        for &local in part {
                            labels[comp[local]][c] = Some((x, a));
                        }
                    }
                }
                Multipartition::Forbidden([a, b, d]) => {
                    let triple = [comp[a], comp[b], comp[d]];
                    if best.as_ref().is_none_or(|w| triple < w.triple) {
                        best = Some(BellWitness { colour: c, component: comp.clone(), triple });
                    }
                }
            }
        }
        if let Some(w) = best {
            return BellDecision::Reject(w);
        }
        measurements.push(outcome_counts);
    }
    let scenario = BellScenario { parties: cm.colours().to_vec(), outcomes: measurements };
    BellDecision::Accept { scenario, labels: labels.into_iter().map(EventLabel::new).collect() }
}

/// The minimal scenario and the event of every vertex, for a multigraph that
/// [`bell_check`] accepts.
pub fn label_events(cm: &ColouredMultigraph) -> Result<(BellScenario, Vec<EventLabel>)> {
    match bell_check(cm) {
        BellDecision::Accept { scenario, labels } => Ok((scenario, labels)),
        BellDecision::Reject(w) => Err(Error::Precondition(format!(
            "not a Bell multigraph: vertices {:?} induce a single-edge triple in colour {}",
            w.triple,
            cm.colours()[w.colour]
        ))),
    }
}

/// One vertex per event; a colour-`c` edge joins two events that use the same measurement
/// of party `c` with different outcomes.
pub fn scenario_to_multigraph(scenario: &BellScenario, events: &[EventLabel]) -> Result<ColouredMultigraph> {
    let p = scenario.party_count();
    for (k, e) in events.iter().enumerate() {
        if e.settings.len() != p {
            return invalid(format!("event {k} has {} entries for {p} parties", e.settings.len()));
        }
        for (c, s) in e.settings.iter().enumerate() {
            if let Some((x, a)) = *s {
                let Some(&o) = scenario.outcomes[c].get(x) else {
                    return invalid(format!("event {k}: party {} has no measurement {x}", scenario.parties[c]));
                };
                if a >= o {
                    return invalid(format!("event {k}: measurement {x} of party {} has no outcome {a}", scenario.parties[c]));
                }
            }
        }
    }
    let mut cm = ColouredMultigraph::new(events.len(), scenario.parties.clone())?;
    for u in 0..events.len() {
        for v in (u + 1)..events.len() {
            for c in 0..p {
                if let (Some((x, a)), Some((y, b))) = (events[u].get(c), events[v].get(c)) {
                    if x == y && a != b {
                        cm.add_edge(u, v, c)?;
                    }
                }
            }
        }
    }
    Ok(cm)
}

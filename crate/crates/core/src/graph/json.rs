//! On-disk multigraph format.
//!
//! `{"n": 5, "colours": ["A", "B"], "edges": [{"u": 0, "v": 1, "colour": "A"}, ...]}`.
//! Simple graphs use the single colour `"_"`.

use serde::{Deserialize, Serialize};

use super::{ColouredMultigraph, Graph};
use crate::error::{Error, Result};

pub const SIMPLE_COLOUR: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub colour: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub colours: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serialises")
    }

    pub fn to_multigraph(&self) -> Result<ColouredMultigraph> {
        let mut cm = ColouredMultigraph::new(self.n, self.colours.clone())?;
        for e in &self.edges {
            let c = cm
                .colour_index(&e.colour)
                .ok_or_else(|| Error::Format(format!("edge ({}, {}) uses undeclared colour {:?}", e.u, e.v, e.colour)))?;
            cm.add_edge(e.u, e.v, c)?;
        }
        Ok(cm)
    }

    /// The colourless graph: the only factor of a one-colour file, else the shadow.
    pub fn to_graph(&self) -> Result<Graph> {
        Ok(self.to_multigraph()?.shadow())
    }
}

impl From<&ColouredMultigraph> for GraphFile {
    fn from(cm: &ColouredMultigraph) -> Self {
        Self {
            n: cm.n(),
            colours: cm.colours().to_vec(),
            edges: cm
                .edges()
                .map(|(u, v, c)| EdgeRecord { u, v, colour: cm.colours()[c].clone() })
                .collect(),
        }
    }
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        (&ColouredMultigraph::from_graph(g, SIMPLE_COLOUR)).into()
    }
}

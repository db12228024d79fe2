//! JSON and DOT encodings of [`Graph`].
//!
//! JSON layout (keys in this order, no whitespace):
//!
//! ```text
//! {"n":4,"root":1,"a_loops":[..],"b_loops":[..],"a_edges":[[x,y],..],"b_edges":[[from,to],..]}
//! ```
//!
//! `root` is omitted when absent. Vertices are `1..=n`; a weakly labeled graph
//! additionally carries a trailing `"labels"` array listing its labels in
//! increasing order. `a_edges` pairs are written smaller label first.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, Label};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("labels array has {got} entries but n = {n}")]
    LabelCount { n: u32, got: usize },
    #[error("duplicate entry {0:?} in {1}")]
    Duplicate(Vec<Label>, &'static str),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<Label>,
    a_loops: Vec<Label>,
    b_loops: Vec<Label>,
    a_edges: Vec<[Label; 2]>,
    b_edges: Vec<[Label; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Label>>,
}

fn reject_duplicates<I>(items: I, what: &'static str) -> Result<(), FormatError>
where
    I: IntoIterator<Item = Vec<Label>>,
{
    let mut seen = BTreeSet::new();
    for it in items {
        if !seen.insert(it.clone()) {
            return Err(FormatError::Duplicate(it, what));
        }
    }
    Ok(())
}

impl Graph {
    pub fn to_json(&self) -> String {
        let labels = if self.is_normalized() { None } else { Some(self.labels().collect()) };
        let doc = GraphJson {
            n: self.size() as u32,
            root: self.root(),
            a_loops: self.a_loops().collect(),
            b_loops: self.b_loops().collect(),
            a_edges: self.a_edges().map(|(x, y)| [x, y]).collect(),
            b_edges: self.b_arcs().map(|(x, y)| [x, y]).collect(),
            labels,
        };
        serde_json::to_string(&doc).expect("graph JSON serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph, FormatError> {
        let doc: GraphJson = serde_json::from_str(text)?;
        let labels: Vec<Label> = match doc.labels {
            Some(ls) if ls.len() != doc.n as usize => {
                return Err(FormatError::LabelCount { n: doc.n, got: ls.len() })
            }
            Some(ls) => ls,
            None => (1..=doc.n).collect(),
        };
        reject_duplicates(labels.iter().map(|&l| vec![l]), "labels")?;
        reject_duplicates(doc.a_loops.iter().map(|&l| vec![l]), "a_loops")?;
        reject_duplicates(doc.b_loops.iter().map(|&l| vec![l]), "b_loops")?;
        reject_duplicates(doc.a_edges.iter().map(|&[x, y]| vec![x.min(y), x.max(y)]), "a_edges")?;
        reject_duplicates(doc.b_edges.iter().map(|e| e.to_vec()), "b_edges")?;

        let mut b = Graph::builder().vertices(labels);
        for v in doc.a_loops {
            b = b.a_loop(v);
        }
        for v in doc.b_loops {
            b = b.b_loop(v);
        }
        for [x, y] in doc.a_edges {
            b = b.a_edge(x, y);
        }
        for [x, y] in doc.b_edges {
            b = b.b_arc(x, y);
        }
        if let Some(r) = doc.root {
            b = b.root(r);
        }
        Ok(b.build()?)
    }

    /// Graphviz rendering: a-edges undirected, b-edges directed, root double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in self.labels() {
            let shape = if self.root() == Some(v) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {v} [shape={shape}];");
        }
        for v in self.a_loops() {
            let _ = writeln!(out, "  {v} -> {v} [label=\"a\", dir=none];");
        }
        for (x, y) in self.a_edges() {
            let _ = writeln!(out, "  {x} -> {y} [label=\"a\", dir=none];");
        }
        for v in self.b_loops() {
            let _ = writeln!(out, "  {v} -> {v} [label=\"b\"];");
        }
        for (x, y) in self.b_arcs() {
            let _ = writeln!(out, "  {x} -> {y} [label=\"b\"];");
        }
        out.push_str("}\n");
        out
    }
}

//! Directed, node-labeled, edge-weighted static graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::temporal::{NodeId, TemporalGraph, TimestampedEdge};

/// Where a static node came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A node of the temporal graph.
    Original { node: NodeId },
    /// A timestamped edge of the temporal graph.
    Event { edge: TimestampedEdge },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeRecord {
    pub label: u32,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StaticEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StaticGraphError {
    #[error("edge ({0},{1}) references a missing node")]
    NodeOutOfRange(usize, usize),
    #[error("edge ({0},{1}) appears twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0},{1}) has weight 0")]
    ZeroWeight(usize, usize),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Per-node `(neighbor, weight)` lists.
pub type Adjacency = Vec<Vec<(usize, u64)>>;

/// Static directed graph. Node `i` of the graph is `nodes()[i]`; edges are
/// unique per ordered pair and carry a positive weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StaticGraph {
    nodes: Vec<NodeRecord>,
    edges: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    nodes: Vec<NodeRecord>,
    edges: Vec<StaticEdge>,
}

impl StaticGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(
        nodes: Vec<NodeRecord>,
        edges: impl IntoIterator<Item = StaticEdge>,
    ) -> Result<Self, StaticGraphError> {
        let mut g = StaticGraph {
            nodes,
            edges: BTreeMap::new(),
        };
        for e in edges {
            g.try_add_edge(e.src, e.dst, e.weight)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, label: u32, provenance: Provenance) -> usize {
        self.nodes.push(NodeRecord { label, provenance });
        self.nodes.len() - 1
    }

    pub fn try_add_edge(&mut self, src: usize, dst: usize, weight: u64) -> Result<(), StaticGraphError> {
        if src >= self.nodes.len() || dst >= self.nodes.len() {
            return Err(StaticGraphError::NodeOutOfRange(src, dst));
        }
        if weight == 0 {
            return Err(StaticGraphError::ZeroWeight(src, dst));
        }
        if self.edges.insert((src, dst), weight).is_some() {
            return Err(StaticGraphError::DuplicateEdge(src, dst));
        }
        Ok(())
    }

    /// Add an edge known to be new and in range.
    pub(crate) fn add_edge(&mut self, src: usize, dst: usize, weight: u64) {
        self.try_add_edge(src, dst, weight)
            .expect("builder produced an invalid edge");
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NodeRecord {
        &self.nodes[i]
    }

    /// Edges in `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = StaticEdge> + '_ {
        self.edges
            .iter()
            .map(|(&(src, dst), &weight)| StaticEdge { src, dst, weight })
    }

    pub fn weight(&self, src: usize, dst: usize) -> Option<u64> {
        self.edges.get(&(src, dst)).copied()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn count_label(&self, label: u32) -> usize {
        self.nodes.iter().filter(|n| n.label == label).count()
    }

    /// Out- and in-adjacency lists with weights.
    pub fn adjacency(&self) -> (Adjacency, Adjacency) {
        let mut out = vec![Vec::new(); self.nodes.len()];
        let mut inc = vec![Vec::new(); self.nodes.len()];
        for (&(s, d), &w) in &self.edges {
            out[s].push((d, w));
            inc[d].push((s, w));
        }
        (out, inc)
    }

    /// Index of the node with the given provenance, if any.
    pub fn find(&self, provenance: &Provenance) -> Option<usize> {
        self.nodes.iter().position(|n| &n.provenance == provenance)
    }

    /// Human-readable node name, using `names` of the source temporal graph.
    pub fn node_display(&self, i: usize, source: Option<&TemporalGraph>) -> String {
        let name = |v: NodeId| match source {
            Some(g) if v.0 < g.num_nodes() => g.node_name(v),
            _ => v.0.to_string(),
        };
        match self.nodes[i].provenance {
            Provenance::Original { node } => name(node),
            Provenance::Event { edge } => format!("{}{}^{}", name(edge.src), name(edge.dst), edge.t),
        }
    }

    /// Graphviz DOT: label-0 nodes are boxes, label-1 nodes are ellipses.
    pub fn to_dot(&self, source: Option<&TemporalGraph>) -> String {
        let mut out = String::from("digraph G {\n");
        for i in 0..self.nodes.len() {
            let shape = if self.nodes[i].label == 0 { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\", shape={shape}];",
                self.node_display(i, source).replace('"', "\\\"")
            );
        }
        for e in self.edges() {
            let _ = writeln!(out, "  n{} -> n{} [weight={}];", e.src, e.dst, e.weight);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            nodes: self.nodes.clone(),
            edges: self.edges().collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, StaticGraphError> {
        let parsed: GraphJson =
            serde_json::from_value(value.clone()).map_err(|e| StaticGraphError::Json(e.to_string()))?;
        StaticGraph::from_parts(parsed.nodes, parsed.edges)
    }

    /// `src,dst,weight` rows over node display names.
    pub fn to_csv(&self, source: Option<&TemporalGraph>) -> String {
        let mut out = String::from("src,dst,weight\n");
        for e in self.edges() {
            let _ = writeln!(
                out,
                "{},{},{}",
                self.node_display(e.src, source),
                self.node_display(e.dst, source),
                e.weight
            );
        }
        out
    }
}

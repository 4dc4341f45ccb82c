//! Temporal graph model, time-respecting paths and temporal reachability.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node index, `0..num_nodes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A directed interaction `(src, dst; t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimestampedEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub t: i64,
}

impl TimestampedEdge {
    pub fn new(src: usize, dst: usize, t: i64) -> Self {
        Self {
            src: NodeId(src),
            dst: NodeId(dst),
            t,
        }
    }

    /// Sort key used for the canonical edge order of a [`TemporalGraph`].
    fn time_key(&self) -> (i64, NodeId, NodeId) {
        (self.t, self.src, self.dst)
    }
}

/// Maximum waiting time between consecutive edges of a time-respecting path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Delta(i64);

impl Delta {
    pub fn new(value: i64) -> Result<Self, GraphError> {
        if value < 1 {
            return Err(GraphError::InvalidDelta(value));
        }
        Ok(Self(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// Whether an edge at `next` may follow an edge at `prev`.
    pub fn admits(self, prev: i64, next: i64) -> bool {
        let gap = next - prev;
        gap >= 1 && gap <= self.0
    }
}

impl TryFrom<i64> for Delta {
    type Error = GraphError;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        Delta::new(value)
    }
}

impl From<Delta> for i64 {
    fn from(d: Delta) -> i64 {
        d.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0:?} references a node outside 0..{1}")]
    NodeOutOfRange(TimestampedEdge, usize),
    #[error("duplicate timestamped edge {0:?}")]
    DuplicateEdge(TimestampedEdge),
    #[error("edge {0:?} is not part of the graph")]
    UnknownEdge(TimestampedEdge),
    #[error("node {0} is not part of the graph")]
    UnknownNode(NodeId),
    #[error("waiting time must be at least 1, got {0}")]
    InvalidDelta(i64),
    #[error("expected {expected} node names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("node name {0:?} is used more than once")]
    DuplicateName(String),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("path enumeration exceeded the budget of {0} paths")]
    BudgetExceeded(usize),
}

/// A temporal graph `(V, E)`: `num_nodes` nodes and a set of timestamped edges.
///
/// Edges are stored in canonical order `(t, src, dst)`; the position of an
/// edge in [`TemporalGraph::edges`] is its edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    num_nodes: usize,
    edges: Vec<TimestampedEdge>,
    names: Option<Vec<String>>,
    // per node: outgoing edge indices, ascending by time
    out_index: Vec<Vec<usize>>,
    lookup: HashMap<TimestampedEdge, usize>,
}

impl TemporalGraph {
    pub fn new(num_nodes: usize, edges: impl IntoIterator<Item = TimestampedEdge>) -> Result<Self, GraphError> {
        let mut edges: Vec<TimestampedEdge> = edges.into_iter().collect();
        for e in &edges {
            if e.src.0 >= num_nodes || e.dst.0 >= num_nodes {
                return Err(GraphError::NodeOutOfRange(*e, num_nodes));
            }
        }
        edges.sort_by_key(TimestampedEdge::time_key);
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }

        let mut out_index = vec![Vec::new(); num_nodes];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            out_index[e.src.0].push(i);
            lookup.insert(*e, i);
        }
        Ok(Self {
            num_nodes,
            edges,
            names: None,
            out_index,
            lookup,
        })
    }

    /// Attach external node names. Names must be unique, one per node.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.num_nodes {
            return Err(GraphError::NameCount {
                expected: self.num_nodes,
                got: names.len(),
            });
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(GraphError::DuplicateName(n.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Build a graph from `(src, dst, t)` triples over string names; nodes are
    /// numbered in order of first appearance.
    pub fn from_named_edges<S: AsRef<str>>(triples: &[(S, S, i64)]) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &str| -> usize {
            if let Some(&id) = ids.get(s) {
                return id;
            }
            ids.insert(s.to_string(), names.len());
            names.push(s.to_string());
            names.len() - 1
        };
        let edges: Vec<TimestampedEdge> = triples
            .iter()
            .map(|(u, v, t)| {
                let u = intern(u.as_ref());
                let v = intern(v.as_ref());
                TimestampedEdge::new(u, v, *t)
            })
            .collect();
        TemporalGraph::new(names.len(), edges)?.with_names(names)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[TimestampedEdge] {
        &self.edges
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// External name of a node, or its index when the graph is unnamed.
    pub fn node_name(&self, v: NodeId) -> String {
        match &self.names {
            Some(names) => names[v.0].clone(),
            None => v.0.to_string(),
        }
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.as_ref()?.iter().position(|n| n == name).map(NodeId)
    }

    pub fn edge_index(&self, e: &TimestampedEdge) -> Option<usize> {
        self.lookup.get(e).copied()
    }

    pub fn contains_edge(&self, e: &TimestampedEdge) -> bool {
        self.lookup.contains_key(e)
    }

    /// Earliest timestamp in the graph.
    pub fn t_min(&self) -> Option<i64> {
        self.edges.first().map(|e| e.t)
    }

    /// Outgoing edge indices of `v`, ascending by timestamp.
    pub fn out_edges(&self, v: NodeId) -> &[usize] {
        &self.out_index[v.0]
    }

    /// Short human-readable label `uv^t` using external names.
    pub fn edge_label(&self, e: &TimestampedEdge) -> String {
        format!("{}{}^{}", self.node_name(e.src), self.node_name(e.dst), e.t)
    }

    /// Indices of edges that can follow edge `idx` on a time-respecting path.
    pub(crate) fn successor_indices(&self, idx: usize, delta: Delta) -> impl Iterator<Item = usize> + '_ {
        let e = self.edges[idx];
        let out = &self.out_index[e.dst.0];
        let start = out.partition_point(|&j| self.edges[j].t <= e.t);
        out[start..]
            .iter()
            .copied()
            .take_while(move |&j| self.edges[j].t - e.t <= delta.get())
    }

    /// Apply a node permutation and a timestamp transform, keeping names.
    pub fn relabel(
        &self,
        node_perm: &[usize],
        mut retime: impl FnMut(&TimestampedEdge) -> i64,
    ) -> Result<Self, GraphError> {
        let edges: Vec<TimestampedEdge> = self
            .edges
            .iter()
            .map(|e| TimestampedEdge::new(node_perm[e.src.0], node_perm[e.dst.0], retime(e)))
            .collect();
        let g = TemporalGraph::new(self.num_nodes, edges)?;
        match &self.names {
            Some(names) => {
                let mut renamed = vec![String::new(); names.len()];
                for (old, name) in names.iter().enumerate() {
                    renamed[node_perm[old]] = name.clone();
                }
                g.with_names(renamed)
            }
            None => Ok(g),
        }
    }
}

/// A path given by its timestamped edges; the node sequence is implied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TemporalPath {
    pub edges: Vec<TimestampedEdge>,
}

impl TemporalPath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        let mut nodes = Vec::with_capacity(self.edges.len() + 1);
        if let Some(first) = self.edges.first() {
            nodes.push(first.src);
        }
        nodes.extend(self.edges.iter().map(|e| e.dst));
        nodes
    }

    pub fn is_time_respecting(&self, delta: Delta) -> bool {
        self.edges
            .windows(2)
            .all(|w| w[0].dst == w[1].src && delta.admits(w[0].t, w[1].t))
    }

    pub fn source(&self) -> Option<NodeId> {
        self.edges.first().map(|e| e.src)
    }

    pub fn target(&self) -> Option<NodeId> {
        self.edges.last().map(|e| e.dst)
    }
}

/// All edges `(v, w; t')` with `1 <= t' - t <= delta` for `e = (u, v; t)`.
pub fn time_respecting_successors(
    g: &TemporalGraph,
    e: &TimestampedEdge,
    delta: Delta,
) -> Result<Vec<TimestampedEdge>, GraphError> {
    let idx = g.edge_index(e).ok_or(GraphError::UnknownEdge(*e))?;
    Ok(g.successor_indices(idx, delta).map(|j| g.edges[j]).collect())
}

/// Enumerate every time-respecting path with `1..=max_len` edges.
///
/// Paths are emitted in depth-first order from each starting edge, starting
/// edges taken in canonical (time, index) order. With `budget = Some(n)` the
/// enumeration fails once more than `n` paths would be produced.
pub fn enumerate_time_respecting_paths(
    g: &TemporalGraph,
    delta: Delta,
    max_len: Option<usize>,
    budget: Option<usize>,
) -> Result<Vec<TemporalPath>, GraphError> {
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if max_len == 0 {
        return Ok(out);
    }
    let mut stack: Vec<usize> = Vec::new();

    fn extend(
        g: &TemporalGraph,
        delta: Delta,
        max_len: usize,
        budget: Option<usize>,
        stack: &mut Vec<usize>,
        out: &mut Vec<TemporalPath>,
    ) -> Result<(), GraphError> {
        if let Some(b) = budget {
            if out.len() >= b {
                return Err(GraphError::BudgetExceeded(b));
            }
        }
        out.push(TemporalPath {
            edges: stack.iter().map(|&i| g.edges[i]).collect(),
        });
        if stack.len() >= max_len {
            return Ok(());
        }
        let last = *stack.last().expect("non-empty stack");
        let next: Vec<usize> = g.successor_indices(last, delta).collect();
        for j in next {
            stack.push(j);
            extend(g, delta, max_len, budget, stack, out)?;
            stack.pop();
        }
        Ok(())
    }

    for start in 0..g.num_edges() {
        stack.push(start);
        extend(g, delta, max_len, budget, &mut stack, &mut out)?;
        stack.pop();
    }
    Ok(out)
}

/// Nodes reachable from `source` via time-respecting paths, including `source`.
pub fn temporal_reachability(g: &TemporalGraph, delta: Delta, source: NodeId) -> Result<BTreeSet<NodeId>, GraphError> {
    if source.0 >= g.num_nodes() {
        return Err(GraphError::UnknownNode(source));
    }
    let mut reached = BTreeSet::from([source]);
    let mut seen = vec![false; g.num_edges()];
    let mut queue: VecDeque<usize> = g.out_edges(source).iter().copied().collect();
    for &i in &queue {
        seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        reached.insert(g.edges[i].dst);
        for j in g.successor_indices(i, delta) {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(reached)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn showcase() -> TemporalGraph {
        TemporalGraph::from_named_edges(&[
            ("a", "b", 1),
            ("a", "b", 5),
            ("b", "d", 2),
            ("b", "d", 6),
            ("c", "d", 3),
            ("c", "d", 7),
            ("d", "e", 4),
            ("d", "e", 8),
        ])
        .unwrap()
    }

    fn g1() -> TemporalGraph {
        TemporalGraph::from_named_edges(&[("a", "b", 1), ("b", "d", 2), ("c", "d", 3), ("d", "e", 4)]).unwrap()
    }

    fn g4() -> TemporalGraph {
        TemporalGraph::from_named_edges(&[("a", "b", 1), ("b", "d", 2), ("c", "d", 3), ("d", "e", 1)]).unwrap()
    }

    fn edge(g: &TemporalGraph, u: &str, v: &str, t: i64) -> TimestampedEdge {
        TimestampedEdge {
            src: g.node_by_name(u).unwrap(),
            dst: g.node_by_name(v).unwrap(),
            t,
        }
    }

    fn d(v: i64) -> Delta {
        Delta::new(v).unwrap()
    }

    #[test]
    fn delta_rejects_non_positive() {
        assert_eq!(Delta::new(0), Err(GraphError::InvalidDelta(0)));
        assert!(Delta::new(-3).is_err());
    }

    #[test]
    fn construction_rejects_duplicates_and_bad_endpoints() {
        let dup = TemporalGraph::new(2, [TimestampedEdge::new(0, 1, 1), TimestampedEdge::new(0, 1, 1)]);
        assert!(matches!(dup, Err(GraphError::DuplicateEdge(_))));
        let oob = TemporalGraph::new(2, [TimestampedEdge::new(0, 2, 1)]);
        assert!(matches!(oob, Err(GraphError::NodeOutOfRange(..))));
    }

    #[test]
    fn successors_showcase() {
        let g = showcase();
        let s = time_respecting_successors(&g, &edge(&g, "b", "d", 2), d(2)).unwrap();
        assert_eq!(s, vec![edge(&g, "d", "e", 4)]);
        let s = time_respecting_successors(&g, &edge(&g, "d", "e", 8), d(2)).unwrap();
        assert!(s.is_empty());
        let missing = TimestampedEdge::new(0, 1, 99);
        assert!(time_respecting_successors(&g, &missing, d(2)).is_err());
    }

    #[test]
    fn successors_g1_delta1() {
        let g = g1();
        let s = time_respecting_successors(&g, &edge(&g, "a", "b", 1), d(1)).unwrap();
        assert_eq!(s, vec![edge(&g, "b", "d", 2)]);
    }

    #[test]
    fn self_loop_chains() {
        let g = TemporalGraph::from_named_edges(&[("u", "u", 1), ("u", "w", 2)]).unwrap();
        let s = time_respecting_successors(&g, &edge(&g, "u", "u", 1), d(1)).unwrap();
        assert_eq!(s, vec![edge(&g, "u", "w", 2)]);
    }

    fn count_by_len(paths: &[TemporalPath]) -> Vec<usize> {
        let max = paths.iter().map(TemporalPath::len).max().unwrap_or(0);
        (1..=max)
            .map(|k| paths.iter().filter(|p| p.len() == k).count())
            .collect()
    }

    #[test]
    fn enumerate_g1_and_g4() {
        let paths = enumerate_time_respecting_paths(&g1(), d(2), None, None).unwrap();
        assert_eq!(paths.len(), 8);
        assert_eq!(count_by_len(&paths), vec![4, 3, 1]);

        let g = g4();
        let paths = enumerate_time_respecting_paths(&g, d(2), None, None).unwrap();
        assert_eq!(count_by_len(&paths), vec![4, 1]);
        let long: Vec<_> = paths.iter().filter(|p| p.len() == 2).collect();
        assert_eq!(long[0].edges, vec![edge(&g, "a", "b", 1), edge(&g, "b", "d", 2)]);
    }

    #[test]
    fn enumerate_max_len_one_is_edge_set() {
        let g = showcase();
        let paths = enumerate_time_respecting_paths(&g, d(3), Some(1), None).unwrap();
        let edges: Vec<_> = paths.iter().map(|p| p.edges[0]).collect();
        assert_eq!(edges, g.edges());
    }

    #[test]
    fn enumerate_order_is_by_start_time() {
        let paths = enumerate_time_respecting_paths(&showcase(), d(2), None, None).unwrap();
        let starts: Vec<i64> = paths.iter().map(|p| p.edges[0].t).collect();
        let mut sorted = starts.clone();
        sorted.sort();
        assert_eq!(starts, sorted);
    }

    #[test]
    fn enumerate_budget() {
        let r = enumerate_time_respecting_paths(&g1(), d(2), None, Some(5));
        assert_eq!(r, Err(GraphError::BudgetExceeded(5)));
        assert!(enumerate_time_respecting_paths(&g1(), d(2), None, Some(8)).is_ok());
    }

    #[test]
    fn reachability_examples() {
        let g = g1();
        let names = |s: &BTreeSet<NodeId>| s.iter().map(|&v| g.node_name(v)).collect::<Vec<_>>();
        let r = temporal_reachability(&g, d(2), g.node_by_name("a").unwrap()).unwrap();
        assert_eq!(names(&r), ["a", "b", "d", "e"]);

        let g = g4();
        let r = temporal_reachability(&g, d(2), g.node_by_name("b").unwrap()).unwrap();
        let names: Vec<_> = r.iter().map(|&v| g.node_name(v)).collect();
        assert_eq!(names, ["b", "d"]);
    }

    #[test]
    fn reachability_isolated_node() {
        let g = TemporalGraph::new(3, [TimestampedEdge::new(0, 1, 1)]).unwrap();
        let r = temporal_reachability(&g, d(1), NodeId(2)).unwrap();
        assert_eq!(r, BTreeSet::from([NodeId(2)]));
        assert!(temporal_reachability(&g, d(1), NodeId(3)).is_err());
    }

    #[test]
    fn names_must_be_unique() {
        let g = TemporalGraph::new(2, [TimestampedEdge::new(0, 1, 1)]).unwrap();
        assert!(g.clone().with_names(vec!["x".into(), "x".into()]).is_err());
        assert!(g.with_names(vec!["x".into()]).is_err());
    }
}

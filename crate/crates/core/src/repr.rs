//! Static representations of a temporal graph: event graph, augmented and
//! compressed augmented event graphs, time-aggregated and time-concatenated
//! graphs, and snapshot sequences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::static_graph::{Provenance, StaticGraph};
use crate::temporal::{Delta, GraphError, NodeId, TemporalGraph, TimestampedEdge};

/// Label of nodes that stand for temporal-graph nodes.
pub const ORIGINAL_LABEL: u32 = 0;
/// Label of nodes that stand for timestamped edges.
pub const EVENT_LABEL: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReprError {
    #[error("temporal graph has no edges")]
    EmptyGraph,
    #[error("node {0} is not an event node")]
    NotAnEventNode(usize),
    #[error("invalid snapshot sequence: {0}")]
    InvalidSnapshots(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn event_edge(g: &StaticGraph, i: usize) -> Result<TimestampedEdge, ReprError> {
    match g.node(i).provenance {
        Provenance::Event { edge } => Ok(edge),
        Provenance::Original { .. } => Err(ReprError::NotAnEventNode(i)),
    }
}

/// Event graph: one node per timestamped edge, an arc `e -> e'` whenever `e'`
/// can follow `e` on a time-respecting path.
pub fn build_event_graph(g: &TemporalGraph, delta: Delta) -> StaticGraph {
    let mut eg = StaticGraph::new();
    for e in g.edges() {
        eg.add_node(EVENT_LABEL, Provenance::Event { edge: *e });
    }
    for i in 0..g.num_edges() {
        for j in g.successor_indices(i, delta) {
            eg.add_edge(i, j, 1);
        }
    }
    eg
}

/// Attach original nodes `0..num_nodes` (label 0) to an event graph with
/// `u -> (u,v;t)` and `(u,v;t) -> v` incidence arcs. Original nodes come
/// first, event nodes keep their relative order after them.
fn augment(
    eg: &StaticGraph,
    num_nodes: usize,
    incidence_weight: impl Fn(usize) -> u64,
) -> Result<StaticGraph, ReprError> {
    let mut aug = StaticGraph::new();
    for v in 0..num_nodes {
        aug.add_node(ORIGINAL_LABEL, Provenance::Original { node: NodeId(v) });
    }
    for i in 0..eg.num_nodes() {
        let edge = event_edge(eg, i)?;
        if edge.src.0 >= num_nodes || edge.dst.0 >= num_nodes {
            return Err(GraphError::NodeOutOfRange(edge, num_nodes).into());
        }
        aug.add_node(EVENT_LABEL, Provenance::Event { edge });
    }
    for e in eg.edges() {
        aug.add_edge(num_nodes + e.src, num_nodes + e.dst, e.weight);
    }
    for i in 0..eg.num_nodes() {
        let edge = event_edge(eg, i)?;
        let w = incidence_weight(i);
        aug.add_edge(edge.src.0, num_nodes + i, w);
        aug.add_edge(num_nodes + i, edge.dst.0, w);
    }
    Ok(aug)
}

/// Augment an explicitly given event graph over temporal nodes `0..num_nodes`.
pub fn augment_event_graph(eg: &StaticGraph, num_nodes: usize) -> Result<StaticGraph, ReprError> {
    augment(eg, num_nodes, |_| 1)
}

pub fn build_augmented_event_graph(g: &TemporalGraph, delta: Delta) -> StaticGraph {
    augment(&build_event_graph(g, delta), g.num_nodes(), |_| 1).expect("event graph built from the same temporal graph")
}

/// Weakly connected components, each as an induced subgraph. Components are
/// ordered by their smallest node index; node order is preserved.
pub fn connected_components(eg: &StaticGraph) -> Vec<StaticGraph> {
    let n = eg.num_nodes();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in eg.edges() {
        let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }

    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        members.entry(root).or_default().push(v);
    }
    let mut position = vec![0usize; n];
    let mut which = vec![0usize; n];
    let mut comps: Vec<StaticGraph> = Vec::with_capacity(members.len());
    for (c, nodes) in members.values().enumerate() {
        let mut sub = StaticGraph::new();
        for &v in nodes {
            position[v] = sub.add_node(eg.node(v).label, eg.node(v).provenance);
            which[v] = c;
        }
        comps.push(sub);
    }
    for e in eg.edges() {
        comps[which[e.src]].add_edge(position[e.src], position[e.dst], e.weight);
    }
    comps
}

/// Replace every event `(u,v;t)` by `(u,v;i)` where `i` is the 1-based rank
/// of `t` among the timestamps of pair `(u,v)` inside this component.
pub fn tau_relabel(component: &StaticGraph) -> Result<StaticGraph, ReprError> {
    let mut per_pair: HashMap<(NodeId, NodeId), Vec<i64>> = HashMap::new();
    for i in 0..component.num_nodes() {
        let e = event_edge(component, i)?;
        per_pair.entry((e.src, e.dst)).or_default().push(e.t);
    }
    for ts in per_pair.values_mut() {
        ts.sort_unstable();
    }
    let mut out = StaticGraph::new();
    for i in 0..component.num_nodes() {
        let e = event_edge(component, i)?;
        let ts = &per_pair[&(e.src, e.dst)];
        let rank = ts.binary_search(&e.t).expect("timestamp present") as i64 + 1;
        out.add_node(
            component.node(i).label,
            Provenance::Event {
                edge: TimestampedEdge { t: rank, ..e },
            },
        );
    }
    for e in component.edges() {
        out.add_edge(e.src, e.dst, e.weight);
    }
    Ok(out)
}

fn push_edge(buf: &mut Vec<u8>, e: &TimestampedEdge) {
    buf.extend_from_slice(&(e.src.0 as u64).to_be_bytes());
    buf.extend_from_slice(&(e.dst.0 as u64).to_be_bytes());
    // order-preserving encoding of a signed value
    buf.extend_from_slice(&((e.t as u64) ^ (1 << 63)).to_be_bytes());
}

/// Sorted serialization of an event-node subgraph: its event set followed by
/// its arc set, both in ascending order. Two components get the same key iff
/// they have identical event and arc sets.
pub fn canonical_serialization(component: &StaticGraph) -> Result<Vec<u8>, ReprError> {
    let events: Vec<TimestampedEdge> = (0..component.num_nodes())
        .map(|i| event_edge(component, i))
        .collect::<Result<_, _>>()?;
    let mut sorted_events = events.clone();
    sorted_events.sort_unstable();
    let mut arcs: Vec<(TimestampedEdge, TimestampedEdge, u64)> = component
        .edges()
        .map(|e| (events[e.src], events[e.dst], e.weight))
        .collect();
    arcs.sort_unstable();

    let mut buf = Vec::with_capacity(24 * sorted_events.len() + 56 * arcs.len() + 16);
    buf.extend_from_slice(&(sorted_events.len() as u64).to_be_bytes());
    for e in &sorted_events {
        push_edge(&mut buf, e);
    }
    buf.extend_from_slice(&(arcs.len() as u64).to_be_bytes());
    for (a, b, w) in &arcs {
        push_edge(&mut buf, a);
        push_edge(&mut buf, b);
        buf.extend_from_slice(&w.to_be_bytes());
    }
    Ok(buf)
}

/// One equivalence class of event-graph components under τ-relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClass {
    /// The member with the earliest timestamp, original timestamps retained.
    pub representative: StaticGraph,
    pub cardinality: u64,
    pub canonical_key: Vec<u8>,
}

struct Compressed {
    graph: StaticGraph,
    classes: Vec<ComponentClass>,
    // class cardinality for each node of `graph`
    node_cardinality: Vec<u64>,
}

fn compress(eg: &StaticGraph) -> Result<Compressed, ReprError> {
    let comps = connected_components(eg);
    let keyed: Vec<(Vec<u8>, i64, Vec<u8>)> = comps
        .par_iter()
        .map(|c| -> Result<_, ReprError> {
            let key = canonical_serialization(&tau_relabel(c)?)?;
            let min_t = (0..c.num_nodes())
                .map(|i| event_edge(c, i).map(|e| e.t))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .min()
                .unwrap_or(i64::MAX);
            Ok((key, min_t, canonical_serialization(c)?))
        })
        .collect::<Result<_, _>>()?;

    let mut groups: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, (key, _, _)) in keyed.iter().enumerate() {
        groups.entry(key.as_slice()).or_default().push(i);
    }

    let mut graph = StaticGraph::new();
    let mut classes = Vec::with_capacity(groups.len());
    let mut node_cardinality = Vec::new();
    for (key, members) in groups {
        let rep = *members
            .iter()
            .min_by(|&&a, &&b| (keyed[a].1, &keyed[a].2).cmp(&(keyed[b].1, &keyed[b].2)))
            .expect("non-empty class");
        let rep_graph = &comps[rep];
        let cardinality = members.len() as u64;
        let offset = graph.num_nodes();
        for n in rep_graph.nodes() {
            graph.add_node(n.label, n.provenance);
            node_cardinality.push(cardinality);
        }
        for e in rep_graph.edges() {
            graph.add_edge(offset + e.src, offset + e.dst, cardinality);
        }
        classes.push(ComponentClass {
            representative: rep_graph.clone(),
            cardinality,
            canonical_key: key.to_vec(),
        });
    }
    Ok(Compressed {
        graph,
        classes,
        node_cardinality,
    })
}

/// Merge τ-equivalent components into one representative each; every arc of
/// a representative is weighted with the size of its class.
pub fn compress_event_graph(eg: &StaticGraph) -> Result<(StaticGraph, Vec<ComponentClass>), ReprError> {
    let c = compress(eg)?;
    Ok((c.graph, c.classes))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressOptions {
    /// Weight incidence arcs with the class size instead of 1.
    pub weighted_incidence: bool,
}

/// Compress an explicitly given event graph and attach original nodes.
pub fn compress_and_augment(
    eg: &StaticGraph,
    num_nodes: usize,
    opts: CompressOptions,
) -> Result<(StaticGraph, Vec<ComponentClass>), ReprError> {
    let c = compress(eg)?;
    let card = &c.node_cardinality;
    let graph = if opts.weighted_incidence {
        augment(&c.graph, num_nodes, |i| card[i])?
    } else {
        augment(&c.graph, num_nodes, |_| 1)?
    };
    Ok((graph, c.classes))
}

pub fn build_compressed_augmented_event_graph(
    g: &TemporalGraph,
    delta: Delta,
    opts: CompressOptions,
) -> (StaticGraph, Vec<ComponentClass>) {
    compress_and_augment(&build_event_graph(g, delta), g.num_nodes(), opts)
        .expect("event graph built from the same temporal graph")
}

fn pair_timestamps(g: &TemporalGraph) -> BTreeMap<(usize, usize), Vec<i64>> {
    let mut pairs: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
    for e in g.edges() {
        pairs.entry((e.src.0, e.dst.0)).or_default().push(e.t);
    }
    pairs
}

fn original_nodes(n: usize) -> StaticGraph {
    let mut s = StaticGraph::new();
    for v in 0..n {
        s.add_node(ORIGINAL_LABEL, Provenance::Original { node: NodeId(v) });
    }
    s
}

/// Time-aggregated graph: edge `(u,v)` weighted by the number of timestamped
/// edges from `u` to `v`.
pub fn build_time_aggregated(g: &TemporalGraph) -> StaticGraph {
    let mut s = original_nodes(g.num_nodes());
    for ((u, v), ts) in pair_timestamps(g) {
        s.add_edge(u, v, ts.len() as u64);
    }
    s
}

/// Sorted offsets `t - t_min` per static edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimestampSetAnnotation {
    pub t_min: i64,
    pub offsets: BTreeMap<(usize, usize), Vec<i64>>,
}

impl TimestampSetAnnotation {
    pub fn get(&self, src: usize, dst: usize) -> Option<&[i64]> {
        self.offsets.get(&(src, dst)).map(Vec::as_slice)
    }
}

/// Time-concatenated graph: the aggregated topology plus, per edge, the set of
/// timestamps relative to the earliest timestamp of the graph.
pub fn build_time_concatenated(g: &TemporalGraph) -> Result<(StaticGraph, TimestampSetAnnotation), ReprError> {
    let t_min = g.t_min().ok_or(ReprError::EmptyGraph)?;
    let mut s = original_nodes(g.num_nodes());
    let mut offsets = BTreeMap::new();
    for ((u, v), ts) in pair_timestamps(g) {
        s.add_edge(u, v, ts.len() as u64);
        offsets.insert((u, v), ts.iter().map(|t| t - t_min).collect());
    }
    Ok((s, TimestampSetAnnotation { t_min, offsets }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: i64,
    pub edges: Vec<(NodeId, NodeId)>,
}

/// Snapshot form `(E_1, t_1), ..., (E_n, t_n)` over a fixed node set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotSequence {
    num_nodes: usize,
    snapshots: Vec<Snapshot>,
}

impl SnapshotSequence {
    /// Validates strictly increasing times, non-empty and duplicate-free edge
    /// sets, and endpoints below `num_nodes`.
    pub fn new(num_nodes: usize, mut snapshots: Vec<Snapshot>) -> Result<Self, ReprError> {
        let bad = |m: String| Err(ReprError::InvalidSnapshots(m));
        if let Some(w) = snapshots.windows(2).find(|w| w[0].t >= w[1].t) {
            return bad(format!("times {} and {} are not increasing", w[0].t, w[1].t));
        }
        for s in &mut snapshots {
            if s.edges.is_empty() {
                return bad(format!("snapshot at t={} is empty", s.t));
            }
            s.edges.sort_unstable();
            if s.edges.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("snapshot at t={} repeats an edge", s.t));
            }
            if s.edges.iter().any(|(u, v)| u.0 >= num_nodes || v.0 >= num_nodes) {
                return bad(format!("snapshot at t={} references a missing node", s.t));
            }
        }
        Ok(Self { num_nodes, snapshots })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    /// Back to a temporal graph with edges `(u,v;t_i)`.
    pub fn flatten(&self) -> Result<TemporalGraph, ReprError> {
        let edges = self.snapshots.iter().flat_map(|s| {
            s.edges
                .iter()
                .map(move |&(u, v)| TimestampedEdge { src: u, dst: v, t: s.t })
        });
        Ok(TemporalGraph::new(self.num_nodes, edges)?)
    }
}

/// One snapshot per distinct timestamp, ascending.
pub fn to_snapshots(g: &TemporalGraph) -> Result<SnapshotSequence, ReprError> {
    if g.is_empty() {
        return Err(ReprError::EmptyGraph);
    }
    let mut by_time: BTreeMap<i64, BTreeSet<(NodeId, NodeId)>> = BTreeMap::new();
    for e in g.edges() {
        by_time.entry(e.t).or_default().insert((e.src, e.dst));
    }
    let snapshots = by_time
        .into_iter()
        .map(|(t, edges)| Snapshot {
            t,
            edges: edges.into_iter().collect(),
        })
        .collect();
    SnapshotSequence::new(g.num_nodes(), snapshots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn d(v: i64) -> Delta {
        Delta::new(v).unwrap()
    }

    fn names(g: &StaticGraph, tg: &TemporalGraph) -> Vec<String> {
        (0..g.num_nodes()).map(|i| g.node_display(i, Some(tg))).collect()
    }

    fn arcs(g: &StaticGraph, tg: &TemporalGraph) -> BTreeSet<(String, String, u64)> {
        g.edges()
            .map(|e| {
                (
                    g.node_display(e.src, Some(tg)),
                    g.node_display(e.dst, Some(tg)),
                    e.weight,
                )
            })
            .collect()
    }

    fn arc(a: &str, b: &str, w: u64) -> (String, String, u64) {
        (a.to_string(), b.to_string(), w)
    }

    #[test]
    fn event_graph_showcase() {
        let g = fixtures::showcase();
        let eg = build_event_graph(&g, d(2));
        assert_eq!(eg.num_nodes(), 8);
        assert_eq!(eg.num_edges(), 6);
        let expected: BTreeSet<_> = [
            arc("ab^1", "bd^2", 1),
            arc("bd^2", "de^4", 1),
            arc("cd^3", "de^4", 1),
            arc("ab^5", "bd^6", 1),
            arc("bd^6", "de^8", 1),
            arc("cd^7", "de^8", 1),
        ]
        .into();
        assert_eq!(arcs(&eg, &g), expected);
        assert!(eg.nodes().iter().all(|n| n.label == EVENT_LABEL));
    }

    #[test]
    fn event_graph_g4_and_empty() {
        let g = fixtures::family_g4();
        let eg = build_event_graph(&g, d(2));
        assert_eq!(eg.num_nodes(), 4);
        assert_eq!(arcs(&eg, &g), [arc("ab^1", "bd^2", 1)].into());

        let empty = TemporalGraph::new(0, []).unwrap();
        let eg = build_event_graph(&empty, d(1));
        assert_eq!((eg.num_nodes(), eg.num_edges()), (0, 0));
    }

    #[test]
    fn augmented_counts() {
        let g = fixtures::showcase();
        let aug = build_augmented_event_graph(&g, d(2));
        assert_eq!(aug.num_nodes(), 13);
        assert_eq!(aug.count_label(ORIGINAL_LABEL), 5);
        assert_eq!(aug.count_label(EVENT_LABEL), 8);
        assert_eq!(aug.num_edges(), 22);

        let g = fixtures::family_g1();
        let aug = build_augmented_event_graph(&g, d(2));
        assert_eq!((aug.num_nodes(), aug.num_edges()), (9, 11));
    }

    #[test]
    fn augmented_single_edge() {
        let g = TemporalGraph::from_named_edges(&[("a", "b", 1)]).unwrap();
        let aug = build_augmented_event_graph(&g, d(1));
        assert_eq!(names(&aug, &g), ["a", "b", "ab^1"]);
        assert_eq!(arcs(&aug, &g), [arc("a", "ab^1", 1), arc("ab^1", "b", 1)].into());
    }

    #[test]
    fn augmentation_degree_law() {
        let g = fixtures::showcase();
        let aug = build_augmented_event_graph(&g, d(2));
        let (out, inc) = aug.adjacency();
        for i in 0..aug.num_nodes() {
            if aug.node(i).label != EVENT_LABEL {
                continue;
            }
            let from_orig = inc[i]
                .iter()
                .filter(|(s, _)| aug.node(*s).label == ORIGINAL_LABEL)
                .count();
            let to_orig = out[i]
                .iter()
                .filter(|(s, _)| aug.node(*s).label == ORIGINAL_LABEL)
                .count();
            assert_eq!((from_orig, to_orig), (1, 1));
        }
    }

    #[test]
    fn components_showcase_and_twins() {
        let comps = connected_components(&build_event_graph(&fixtures::showcase(), d(2)));
        assert_eq!(comps.iter().map(StaticGraph::num_nodes).collect::<Vec<_>>(), [4, 4]);

        let comps = connected_components(&fixtures::twin_event_graph_1());
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.num_nodes() == 4 && c.num_edges() == 3));
    }

    #[test]
    fn components_edgeless() {
        let g = TemporalGraph::new(2, (0..5).map(|t| TimestampedEdge::new(0, 1, 10 * t))).unwrap();
        let comps = connected_components(&build_event_graph(&g, d(1)));
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.num_nodes() == 1));
    }

    type View = (Vec<(String, i64)>, BTreeSet<(String, String)>);

    fn relabeled_view(c: &StaticGraph) -> View {
        let name = |e: TimestampedEdge| {
            format!(
                "{}{}^{}",
                fixtures::TWIN_NAMES[e.src.0],
                fixtures::TWIN_NAMES[e.dst.0],
                e.t
            )
        };
        let nodes: Vec<(String, i64)> = (0..c.num_nodes())
            .map(|i| {
                let e = event_edge(c, i).unwrap();
                (
                    format!("{}{}", fixtures::TWIN_NAMES[e.src.0], fixtures::TWIN_NAMES[e.dst.0]),
                    e.t,
                )
            })
            .collect();
        let arcs = c
            .edges()
            .map(|e| (name(event_edge(c, e.src).unwrap()), name(event_edge(c, e.dst).unwrap())))
            .collect();
        (nodes, arcs)
    }

    #[test]
    fn tau_relabel_twins_components() {
        let comps = connected_components(&fixtures::twin_event_graph_1());
        // component {ab^1, bc^3, bc^4, cd^6}
        let (nodes, arcs) = relabeled_view(&tau_relabel(&comps[0]).unwrap());
        let mut nodes = nodes;
        nodes.sort();
        assert_eq!(
            nodes,
            [("ab".into(), 1), ("bc".into(), 1), ("bc".into(), 2), ("cd".into(), 1)]
        );
        let expected: BTreeSet<(String, String)> = [("ab^1", "bc^1"), ("bc^1", "cd^1"), ("bc^2", "cd^1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(arcs, expected);

        // component {ab^21, bc^22, bc^21, cd^23}: the order of the bc pair flips
        let (_, arcs) = relabeled_view(&tau_relabel(&comps[2]).unwrap());
        let expected: BTreeSet<(String, String)> = [("ab^1", "bc^2"), ("bc^2", "cd^1"), ("bc^1", "cd^1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(arcs, expected);
    }

    #[test]
    fn tau_relabel_pair_component_all_ones() {
        let g = TemporalGraph::from_named_edges(&[("a", "b", 7), ("b", "c", 8)]).unwrap();
        let comps = connected_components(&build_event_graph(&g, d(1)));
        let r = tau_relabel(&comps[0]).unwrap();
        assert!((0..2).all(|i| event_edge(&r, i).unwrap().t == 1));
    }

    #[test]
    fn compress_showcase() {
        let g = fixtures::showcase();
        let (c, classes) = compress_event_graph(&build_event_graph(&g, d(2))).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].cardinality, 2);
        assert_eq!((c.num_nodes(), c.num_edges()), (4, 3));
        assert!(c.edges().all(|e| e.weight == 2));
        // representative keeps the earlier component's timestamps
        assert_eq!(names(&c, &g), ["ab^1", "bd^2", "cd^3", "de^4"]);
    }

    #[test]
    fn compress_twins() {
        let weights = |eg: &StaticGraph| {
            let (_, classes) = compress_event_graph(eg).unwrap();
            let mut w: Vec<u64> = classes.iter().map(|c| c.cardinality).collect();
            w.sort();
            w
        };
        assert_eq!(weights(&fixtures::twin_event_graph_1()), [2, 2]);
        assert_eq!(weights(&fixtures::twin_event_graph_2()), [1, 3]);
    }

    #[test]
    fn compress_distinct_shapes_is_identity() {
        let g =
            TemporalGraph::from_named_edges(&[("a", "b", 1), ("b", "c", 2), ("c", "a", 10), ("a", "d", 20)]).unwrap();
        let eg = build_event_graph(&g, d(1));
        let (c, classes) = compress_event_graph(&eg).unwrap();
        assert!(classes.iter().all(|k| k.cardinality == 1));
        assert_eq!((c.num_nodes(), c.num_edges()), (eg.num_nodes(), eg.num_edges()));
        assert!(c.edges().all(|e| e.weight == 1));
    }

    #[test]
    fn compression_class_sizes_sum_to_components() {
        let eg = build_event_graph(&fixtures::twin_temporal_1(), d(2));
        let (_, classes) = compress_event_graph(&eg).unwrap();
        let total: u64 = classes.iter().map(|c| c.cardinality).sum();
        assert_eq!(total as usize, connected_components(&eg).len());
    }

    #[test]
    fn compressed_augmented_showcase() {
        let g = fixtures::showcase();
        let (c, _) = build_compressed_augmented_event_graph(&g, d(2), CompressOptions::default());
        assert_eq!(c.num_nodes(), 9);
        assert_eq!(c.count_label(ORIGINAL_LABEL), 5);
        assert_eq!(c.count_label(EVENT_LABEL), 4);
        for e in c.edges() {
            let event_arc = c.node(e.src).label == EVENT_LABEL && c.node(e.dst).label == EVENT_LABEL;
            assert_eq!(e.weight, if event_arc { 2 } else { 1 });
        }
        let opts = CompressOptions {
            weighted_incidence: true,
        };
        let (w, _) = build_compressed_augmented_event_graph(&g, d(2), opts);
        assert!(w.edges().all(|e| e.weight == 2));
    }

    #[test]
    fn compressed_augmented_trivial_cases() {
        let single = TemporalGraph::from_named_edges(&[("a", "b", 1)]).unwrap();
        let (c, _) = build_compressed_augmented_event_graph(&single, d(1), CompressOptions::default());
        assert_eq!(c, build_augmented_event_graph(&single, d(1)));

        let g = fixtures::family_g1();
        let (c, _) = build_compressed_augmented_event_graph(&g, d(2), CompressOptions::default());
        assert_eq!(c, build_augmented_event_graph(&g, d(2)));
    }

    #[test]
    fn aggregated_graphs() {
        let g = fixtures::showcase();
        let a = build_time_aggregated(&g);
        assert_eq!((a.num_nodes(), a.num_edges()), (5, 4));
        assert!(a.edges().all(|e| e.weight == 2));
        assert_eq!(a.total_weight() as usize, g.num_edges());
        assert_eq!(
            build_time_aggregated(&fixtures::family_g1()),
            build_time_aggregated(&fixtures::family_g4())
        );
        let empty = build_time_aggregated(&TemporalGraph::new(0, []).unwrap());
        assert_eq!(empty.num_nodes(), 0);
    }

    fn annotation_by_name(g: &TemporalGraph) -> BTreeMap<String, Vec<i64>> {
        let (_, ann) = build_time_concatenated(g).unwrap();
        ann.offsets
            .iter()
            .map(|(&(u, v), ts)| {
                (
                    format!("{}{}", g.node_name(NodeId(u)), g.node_name(NodeId(v))),
                    ts.clone(),
                )
            })
            .collect()
    }

    #[test]
    fn concatenated_annotations() {
        let a1 = annotation_by_name(&fixtures::family_g1());
        let expected: BTreeMap<String, Vec<i64>> = [("ab", 0), ("bd", 1), ("cd", 2), ("de", 3)]
            .iter()
            .map(|(k, v)| (k.to_string(), vec![*v]))
            .collect();
        assert_eq!(a1, expected);
        assert_eq!(annotation_by_name(&fixtures::family_g2()), expected);

        let single = TemporalGraph::from_named_edges(&[("a", "b", 7)]).unwrap();
        assert_eq!(annotation_by_name(&single)["ab"], vec![0]);

        let empty = TemporalGraph::new(1, []).unwrap();
        assert_eq!(build_time_concatenated(&empty).unwrap_err(), ReprError::EmptyGraph);
    }

    #[test]
    fn snapshots() {
        let s = to_snapshots(&fixtures::family_g1()).unwrap();
        assert_eq!(s.snapshots().iter().map(|s| s.t).collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert!(s.snapshots().iter().all(|s| s.edges.len() == 1));

        let same_time = TemporalGraph::from_named_edges(&[("a", "b", 5), ("b", "c", 5)]).unwrap();
        assert_eq!(to_snapshots(&same_time).unwrap().len(), 1);

        assert_eq!(to_snapshots(&fixtures::showcase()).unwrap().len(), 8);
        assert!(to_snapshots(&TemporalGraph::new(1, []).unwrap()).is_err());
    }

    #[test]
    fn snapshot_validation() {
        let snap = |t, e: Vec<(usize, usize)>| Snapshot {
            t,
            edges: e.into_iter().map(|(u, v)| (NodeId(u), NodeId(v))).collect(),
        };
        assert!(SnapshotSequence::new(2, vec![snap(2, vec![(0, 1)]), snap(1, vec![(1, 0)])]).is_err());
        assert!(SnapshotSequence::new(2, vec![snap(1, vec![])]).is_err());
        assert!(SnapshotSequence::new(2, vec![snap(1, vec![(0, 1), (0, 1)])]).is_err());
        assert!(SnapshotSequence::new(2, vec![snap(1, vec![(0, 2)])]).is_err());
    }

    #[test]
    fn snapshot_round_trip() {
        let g = fixtures::showcase();
        let back = to_snapshots(&g).unwrap().flatten().unwrap();
        assert_eq!(back.edges(), g.edges());
    }
}

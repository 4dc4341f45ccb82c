//! Exact isomorphism tests for static graphs and four notions of temporal
//! graph isomorphism, with witness mappings.
//!
//! The static search refines both graphs jointly by color refinement, rejects
//! on differing color histograms, then backtracks over nodes of equal color,
//! always extending the mapping with the unmapped node most connected to the
//! already-mapped ones. Every witness is re-checked by a validator that does
//! not share code with the search before it is returned.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repr::{self, ReprError, SnapshotSequence};
use crate::static_graph::{Provenance, StaticGraph};
use crate::temporal::{self, Delta, GraphError, NodeId, TemporalGraph, TimestampedEdge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    BudgetExceeded,
}

/// Limit on the number of search-tree nodes expanded by one test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes_expanded: u64,
}

impl SearchBudget {
    pub fn new(max_nodes_expanded: u64) -> Self {
        assert!(max_nodes_expanded > 0, "search budget must be positive");
        Self { max_nodes_expanded }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes_expanded: 10_000_000,
        }
    }
}

/// Outcome of an isomorphism test.
///
/// `node_map[i]` is the image of node `i` of the first graph. For temporal
/// tests `edge_map` pairs every timestamped edge of the first graph with its
/// image; for plain static tests the edge mapping is induced by `node_map`
/// and `edge_map` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoResult {
    pub verdict: Verdict,
    pub node_map: Option<Vec<usize>>,
    pub edge_map: Option<Vec<(TimestampedEdge, TimestampedEdge)>>,
}

impl IsoResult {
    fn not_isomorphic() -> Self {
        Self {
            verdict: Verdict::NotIsomorphic,
            node_map: None,
            edge_map: None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        self.verdict == Verdict::Isomorphic
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("temporal graph has no edges")]
    EmptyGraph,
    #[error("graph exceeds the brute-force size cap ({nodes} nodes / {edges} edges, cap {cap_nodes}/{cap_edges})")]
    SizeCapExceeded {
        nodes: usize,
        edges: usize,
        cap_nodes: usize,
        cap_edges: usize,
    },
    #[error("search produced an invalid witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Directed graph with interned node and edge labels.
struct Labeled {
    node_labels: Vec<u64>,
    out: Vec<Vec<(usize, u64)>>,
    inc: Vec<Vec<(usize, u64)>>,
    edge: HashMap<(usize, usize), u64>,
}

impl Labeled {
    fn new(node_labels: Vec<u64>, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let n = node_labels.len();
        let mut g = Labeled {
            node_labels,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            edge: HashMap::new(),
        };
        for (s, d, l) in edges {
            g.out[s].push((d, l));
            g.inc[d].push((s, l));
            g.edge.insert((s, d), l);
        }
        g
    }

    fn from_static(g: &StaticGraph) -> Self {
        Labeled::new(
            g.nodes().iter().map(|n| n.label as u64).collect(),
            g.edges().map(|e| (e.src, e.dst, e.weight)),
        )
    }

    fn len(&self) -> usize {
        self.node_labels.len()
    }
}

type RefineKey = (u64, Vec<(u64, u64)>, Vec<(u64, u64)>);

/// Joint color refinement. Returns `None` when the color histograms differ at
/// some round, otherwise the stable colors of both graphs.
fn joint_refine(g1: &Labeled, g2: &Labeled) -> Option<(Vec<u64>, Vec<u64>)> {
    let mut initial: HashMap<u64, u64> = HashMap::new();
    let mut init = |g: &Labeled| -> Vec<u64> {
        g.node_labels
            .iter()
            .map(|l| {
                let next = initial.len() as u64;
                *initial.entry(*l).or_insert(next)
            })
            .collect()
    };
    let mut c1 = init(g1);
    let mut c2 = init(g2);
    let histogram = |c: &[u64]| {
        let mut h: HashMap<u64, usize> = HashMap::new();
        for &x in c {
            *h.entry(x).or_default() += 1;
        }
        h
    };
    if histogram(&c1) != histogram(&c2) {
        return None;
    }
    let mut classes = histogram(&c1).len();
    loop {
        let mut dict: HashMap<RefineKey, u64> = HashMap::new();
        let mut step = |g: &Labeled, c: &[u64]| -> Vec<u64> {
            (0..g.len())
                .map(|v| {
                    let mut ins: Vec<(u64, u64)> = g.inc[v].iter().map(|&(u, l)| (c[u], l)).collect();
                    let mut outs: Vec<(u64, u64)> = g.out[v].iter().map(|&(u, l)| (c[u], l)).collect();
                    ins.sort_unstable();
                    outs.sort_unstable();
                    let next = dict.len() as u64;
                    *dict.entry((c[v], ins, outs)).or_insert(next)
                })
                .collect()
        };
        let n1 = step(g1, &c1);
        let n2 = step(g2, &c2);
        let h1 = histogram(&n1);
        if h1 != histogram(&n2) {
            return None;
        }
        c1 = n1;
        c2 = n2;
        if h1.len() == classes {
            return Some((c1, c2));
        }
        classes = h1.len();
    }
}

enum SearchOutcome {
    Found(Vec<usize>),
    NotFound,
    Budget,
}

struct Search<'a> {
    g1: &'a Labeled,
    g2: &'a Labeled,
    c1: Vec<u64>,
    by_color: HashMap<u64, Vec<usize>>,
    order: Vec<usize>,
    map: Vec<usize>,
    inv: Vec<usize>,
    expanded: u64,
    budget: u64,
}

const UNMAPPED: usize = usize::MAX;

impl Search<'_> {
    fn feasible(&self, u: usize, v: usize) -> bool {
        let (g1, g2) = (self.g1, self.g2);
        let image = |w: usize| {
            if w == u {
                Some(v)
            } else {
                Some(self.map[w]).filter(|&x| x != UNMAPPED)
            }
        };
        let mapped2 = |x: usize| x == v || self.inv[x] != UNMAPPED;

        let mut count = 0;
        for &(w, l) in &g1.out[u] {
            if let Some(x) = image(w) {
                if g2.edge.get(&(v, x)) != Some(&l) {
                    return false;
                }
                count += 1;
            }
        }
        if g2.out[v].iter().filter(|&&(x, _)| mapped2(x)).count() != count {
            return false;
        }
        let mut count = 0;
        for &(w, l) in &g1.inc[u] {
            if let Some(x) = image(w) {
                if g2.edge.get(&(x, v)) != Some(&l) {
                    return false;
                }
                count += 1;
            }
        }
        g2.inc[v].iter().filter(|&&(x, _)| mapped2(x)).count() == count
    }

    fn run(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let u = self.order[depth];
        let candidates = self.by_color[&self.c1[u]].clone();
        for v in candidates {
            if self.inv[v] != UNMAPPED || !self.feasible(u, v) {
                continue;
            }
            self.expanded += 1;
            if self.expanded > self.budget {
                return None;
            }
            self.map[u] = v;
            self.inv[v] = u;
            if self.run(depth + 1)? {
                return Some(true);
            }
            self.map[u] = UNMAPPED;
            self.inv[v] = UNMAPPED;
        }
        Some(false)
    }
}

/// Order nodes so that each next node is the one most connected to those
/// already placed, ties broken by smaller color class, then index.
fn search_order(g: &Labeled, colors: &[u64]) -> Vec<usize> {
    let n = g.len();
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in colors {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&colors[v]], v))
            .expect("unplaced node left");
        placed[next] = true;
        order.push(next);
        for &(w, _) in g.out[next].iter().chain(&g.inc[next]) {
            links[w] += 1;
        }
    }
    order
}

fn search(g1: &Labeled, g2: &Labeled, budget: SearchBudget) -> SearchOutcome {
    if g1.len() != g2.len() || g1.edge.len() != g2.edge.len() {
        return SearchOutcome::NotFound;
    }
    let Some((c1, c2)) = joint_refine(g1, g2) else {
        return SearchOutcome::NotFound;
    };
    let mut by_color: HashMap<u64, Vec<usize>> = HashMap::new();
    for (v, &c) in c2.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let order = search_order(g1, &c1);
    let mut s = Search {
        g1,
        g2,
        c1,
        by_color,
        order,
        map: vec![UNMAPPED; g1.len()],
        inv: vec![UNMAPPED; g2.len()],
        expanded: 0,
        budget: budget.max_nodes_expanded,
    };
    match s.run(0) {
        Some(true) => SearchOutcome::Found(s.map),
        Some(false) => SearchOutcome::NotFound,
        None => SearchOutcome::Budget,
    }
}

/// Check that `map` is a label- and edge-label-preserving bijection.
fn validate_labeled(g1: &Labeled, g2: &Labeled, map: &[usize]) -> Result<(), String> {
    if g1.len() != g2.len() || map.len() != g1.len() {
        return Err("node counts differ".into());
    }
    let mut hit = vec![false; g2.len()];
    for (u, &v) in map.iter().enumerate() {
        if v >= g2.len() || std::mem::replace(&mut hit[v], true) {
            return Err(format!("mapping is not a bijection at node {u}"));
        }
        if g1.node_labels[u] != g2.node_labels[v] {
            return Err(format!("node {u} -> {v} changes the node label"));
        }
    }
    if g1.edge.len() != g2.edge.len() {
        return Err("edge counts differ".into());
    }
    for (&(s, d), l) in &g1.edge {
        if g2.edge.get(&(map[s], map[d])) != Some(l) {
            return Err(format!("edge ({s},{d}) is not preserved"));
        }
    }
    Ok(())
}

/// Independent check of a static isomorphism witness: bijective, node-label
/// preserving, and preserving every edge with its weight.
pub fn validate_static_witness(g1: &StaticGraph, g2: &StaticGraph, map: &[usize]) -> Result<(), String> {
    validate_labeled(&Labeled::from_static(g1), &Labeled::from_static(g2), map)
}

fn labeled_iso(g1: &Labeled, g2: &Labeled, budget: SearchBudget) -> Result<(Verdict, Option<Vec<usize>>), IsoError> {
    match search(g1, g2, budget) {
        SearchOutcome::Found(map) => {
            validate_labeled(g1, g2, &map).map_err(IsoError::InvalidWitness)?;
            Ok((Verdict::Isomorphic, Some(map)))
        }
        SearchOutcome::NotFound => Ok((Verdict::NotIsomorphic, None)),
        SearchOutcome::Budget => Ok((Verdict::BudgetExceeded, None)),
    }
}

/// Static graph isomorphism respecting node labels and edge weights.
pub fn static_iso(g1: &StaticGraph, g2: &StaticGraph, budget: SearchBudget) -> Result<IsoResult, IsoError> {
    let (verdict, node_map) = labeled_iso(&Labeled::from_static(g1), &Labeled::from_static(g2), budget)?;
    Ok(IsoResult {
        verdict,
        node_map,
        edge_map: None,
    })
}

fn successor_set(g: &TemporalGraph, e: &TimestampedEdge, delta: Delta) -> Result<HashSet<TimestampedEdge>, GraphError> {
    Ok(temporal::time_respecting_successors(g, e, delta)?.into_iter().collect())
}

/// Direct check of a consistent event graph isomorphism: `edge_map` is a
/// bijection `E1 -> E2`, consistent with `node_map` on endpoints, and maps
/// event-graph arcs onto event-graph arcs in both directions.
pub fn validate_consistent_witness(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    delta: Delta,
    node_map: &[usize],
    edge_map: &[(TimestampedEdge, TimestampedEdge)],
) -> Result<(), String> {
    if g1.num_nodes() != g2.num_nodes() || node_map.len() != g1.num_nodes() {
        return Err("node counts differ".into());
    }
    if node_map.iter().collect::<HashSet<_>>().len() != node_map.len() || node_map.iter().any(|&v| v >= g2.num_nodes())
    {
        return Err("node map is not a bijection".into());
    }
    if edge_map.len() != g1.num_edges() || g1.num_edges() != g2.num_edges() {
        return Err("edge counts differ".into());
    }
    let pi: HashMap<TimestampedEdge, TimestampedEdge> = edge_map.iter().copied().collect();
    if pi.len() != edge_map.len() || g1.edges().iter().any(|e| !pi.contains_key(e)) {
        return Err("edge map does not cover the first graph".into());
    }
    let images: HashSet<TimestampedEdge> = pi.values().copied().collect();
    if images.len() != pi.len() || images.iter().any(|e| !g2.contains_edge(e)) {
        return Err("edge map is not a bijection onto the second graph".into());
    }
    for (e, f) in &pi {
        if f.src.0 != node_map[e.src.0] || f.dst.0 != node_map[e.dst.0] {
            return Err(format!("edge {e:?} -> {f:?} is not node-consistent"));
        }
        let succ1 = successor_set(g1, e, delta).map_err(|x| x.to_string())?;
        let mapped: HashSet<TimestampedEdge> = succ1.iter().map(|s| pi[s]).collect();
        let succ2 = successor_set(g2, f, delta).map_err(|x| x.to_string())?;
        if mapped != succ2 {
            return Err(format!("event-graph arcs at {e:?} are not preserved"));
        }
    }
    Ok(())
}

/// Time-respecting path isomorphism via static isomorphism of the augmented
/// event graphs. The witness splits into a node map (label-0 nodes) and an
/// edge map (label-1 nodes).
pub fn consistent_event_graph_iso(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    delta: Delta,
    budget: SearchBudget,
) -> Result<IsoResult, IsoError> {
    if g1.num_nodes() != g2.num_nodes() || g1.num_edges() != g2.num_edges() {
        return Ok(IsoResult::not_isomorphic());
    }
    let a1 = repr::build_augmented_event_graph(g1, delta);
    let a2 = repr::build_augmented_event_graph(g2, delta);
    let r = static_iso(&a1, &a2, budget)?;
    let Some(map) = r.node_map else {
        return Ok(r);
    };
    let mut node_map = vec![UNMAPPED; g1.num_nodes()];
    let mut edge_map = Vec::with_capacity(g1.num_edges());
    for (i, &j) in map.iter().enumerate() {
        match (a1.node(i).provenance, a2.node(j).provenance) {
            (Provenance::Original { node: u }, Provenance::Original { node: v }) => node_map[u.0] = v.0,
            (Provenance::Event { edge: e }, Provenance::Event { edge: f }) => edge_map.push((e, f)),
            _ => return Err(IsoError::InvalidWitness("witness mixes node kinds".into())),
        }
    }
    validate_consistent_witness(g1, g2, delta, &node_map, &edge_map).map_err(IsoError::InvalidWitness)?;
    Ok(IsoResult {
        verdict: Verdict::Isomorphic,
        node_map: Some(node_map),
        edge_map: Some(edge_map),
    })
}

/// Pair the edges of each node pair `(u,v)` with those of `(π(u),π(v))` in
/// time order.
fn induced_edge_map(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    node_map: &[usize],
) -> Result<Vec<(TimestampedEdge, TimestampedEdge)>, IsoError> {
    let mut pairs2: HashMap<(usize, usize), Vec<TimestampedEdge>> = HashMap::new();
    for e in g2.edges() {
        pairs2.entry((e.src.0, e.dst.0)).or_default().push(*e);
    }
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Vec::with_capacity(g1.num_edges());
    for e in g1.edges() {
        let key = (node_map[e.src.0], node_map[e.dst.0]);
        let k = used.entry(key).or_default();
        let f = pairs2
            .get(&key)
            .and_then(|v| v.get(*k))
            .ok_or_else(|| IsoError::InvalidWitness(format!("no image for edge {e:?}")))?;
        *k += 1;
        out.push((*e, *f));
    }
    Ok(out)
}

/// Isomorphism of the time-aggregated graphs, edge counts as edge labels.
pub fn time_aggregated_iso(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    budget: SearchBudget,
) -> Result<IsoResult, IsoError> {
    let r = static_iso(
        &repr::build_time_aggregated(g1),
        &repr::build_time_aggregated(g2),
        budget,
    )?;
    let Some(node_map) = r.node_map else {
        return Ok(r);
    };
    let edge_map = induced_edge_map(g1, g2, &node_map)?;
    Ok(IsoResult {
        verdict: Verdict::Isomorphic,
        node_map: Some(node_map),
        edge_map: Some(edge_map),
    })
}

/// The edge map `(u,v;t) -> (π(u),π(v); t - t_min(g1) + t_min(g2))`.
pub fn shifted_edge_map(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    node_map: &[usize],
) -> Option<Vec<(TimestampedEdge, TimestampedEdge)>> {
    let shift = g2.t_min()? - g1.t_min()?;
    Some(
        g1.edges()
            .iter()
            .map(|e| {
                (
                    *e,
                    TimestampedEdge::new(node_map[e.src.0], node_map[e.dst.0], e.t + shift),
                )
            })
            .collect(),
    )
}

/// Interns label values shared by both graphs of one comparison.
struct Interner<K> {
    ids: HashMap<K, u64>,
}

impl<K: std::hash::Hash + Eq> Interner<K> {
    fn new() -> Self {
        Self { ids: HashMap::new() }
    }

    fn id(&mut self, key: K) -> u64 {
        let next = self.ids.len() as u64;
        *self.ids.entry(key).or_insert(next)
    }
}

/// Isomorphism of the time-concatenated graphs: edge labels are the full
/// offset sets and must match exactly.
pub fn time_concatenated_iso(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    budget: SearchBudget,
) -> Result<IsoResult, IsoError> {
    if g1.is_empty() || g2.is_empty() {
        return Err(IsoError::EmptyGraph);
    }
    let (_, ann1) = repr::build_time_concatenated(g1)?;
    let (_, ann2) = repr::build_time_concatenated(g2)?;
    let mut interner = Interner::new();
    let mut labeled = |n: usize, ann: &repr::TimestampSetAnnotation| {
        let edges: Vec<(usize, usize, u64)> = ann
            .offsets
            .iter()
            .map(|(&(u, v), ts)| (u, v, interner.id(ts.clone())))
            .collect();
        Labeled::new(vec![0; n], edges)
    };
    let l1 = labeled(g1.num_nodes(), &ann1);
    let l2 = labeled(g2.num_nodes(), &ann2);
    let (verdict, node_map) = labeled_iso(&l1, &l2, budget)?;
    let Some(node_map) = node_map else {
        return Ok(IsoResult {
            verdict,
            node_map: None,
            edge_map: None,
        });
    };
    let edge_map = shifted_edge_map(g1, g2, &node_map).expect("graphs are non-empty");
    if let Some((e, f)) = edge_map.iter().find(|(_, f)| !g2.contains_edge(f)) {
        return Err(IsoError::InvalidWitness(format!("{e:?} maps to missing edge {f:?}")));
    }
    Ok(IsoResult {
        verdict,
        node_map: Some(node_map),
        edge_map: Some(edge_map),
    })
}

/// Timewise isomorphism of snapshot sequences: equal length, equal relative
/// snapshot times, and one node bijection that is an isomorphism of every
/// snapshot pair. Tested as a static isomorphism of the union graphs whose
/// edge labels are the sets of snapshot positions containing the edge.
pub fn timewise_iso(s1: &SnapshotSequence, s2: &SnapshotSequence, budget: SearchBudget) -> Result<IsoResult, IsoError> {
    if s1.len() != s2.len() || s1.num_nodes() != s2.num_nodes() {
        return Ok(IsoResult::not_isomorphic());
    }
    let rel = |s: &SnapshotSequence| -> Vec<i64> {
        let t0 = s.snapshots().first().map(|x| x.t).unwrap_or(0);
        s.snapshots().iter().map(|x| x.t - t0).collect()
    };
    if rel(s1) != rel(s2) {
        return Ok(IsoResult::not_isomorphic());
    }
    let mut interner = Interner::new();
    let mut union = |s: &SnapshotSequence| {
        let mut positions: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, snap) in s.snapshots().iter().enumerate() {
            for &(u, v) in &snap.edges {
                positions.entry((u.0, v.0)).or_default().push(i);
            }
        }
        let edges: Vec<(usize, usize, u64)> = positions
            .into_iter()
            .map(|((u, v), pos)| (u, v, interner.id(pos)))
            .collect();
        Labeled::new(vec![0; s.num_nodes()], edges)
    };
    let l1 = union(s1);
    let l2 = union(s2);
    let (verdict, node_map) = labeled_iso(&l1, &l2, budget)?;
    let Some(node_map) = node_map else {
        return Ok(IsoResult {
            verdict,
            node_map: None,
            edge_map: None,
        });
    };
    let mut edge_map = Vec::new();
    for (a, b) in s1.snapshots().iter().zip(s2.snapshots()) {
        let targets: HashSet<(NodeId, NodeId)> = b.edges.iter().copied().collect();
        for &(u, v) in &a.edges {
            let image = (NodeId(node_map[u.0]), NodeId(node_map[v.0]));
            if !targets.contains(&image) {
                return Err(IsoError::InvalidWitness(format!(
                    "snapshot t={}: edge ({u},{v}) is not preserved",
                    a.t
                )));
            }
            edge_map.push((
                TimestampedEdge { src: u, dst: v, t: a.t },
                TimestampedEdge {
                    src: image.0,
                    dst: image.1,
                    t: b.t,
                },
            ));
        }
    }
    Ok(IsoResult {
        verdict,
        node_map: Some(node_map),
        edge_map: Some(edge_map),
    })
}

/// Size limits for [`brute_force_trp_iso`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCap {
    pub max_nodes: usize,
    pub max_edges: usize,
}

impl Default for SizeCap {
    fn default() -> Self {
        Self {
            max_nodes: 6,
            max_edges: 7,
        }
    }
}

/// Reference test of time-respecting path isomorphism by exhaustive search.
///
/// Tries every node bijection and every node-consistent edge bijection (a
/// path of length one forces node consistency) and accepts when the image of
/// the full set of time-respecting paths of `g1` is the set of `g2`.
pub fn brute_force_trp_iso(
    g1: &TemporalGraph,
    g2: &TemporalGraph,
    delta: Delta,
    cap: SizeCap,
) -> Result<IsoResult, IsoError> {
    for g in [g1, g2] {
        if g.num_nodes() > cap.max_nodes || g.num_edges() > cap.max_edges {
            return Err(IsoError::SizeCapExceeded {
                nodes: g.num_nodes(),
                edges: g.num_edges(),
                cap_nodes: cap.max_nodes,
                cap_edges: cap.max_edges,
            });
        }
    }
    if g1.num_nodes() != g2.num_nodes() || g1.num_edges() != g2.num_edges() {
        return Ok(IsoResult::not_isomorphic());
    }
    let as_indices = |g: &TemporalGraph, p: &temporal::TemporalPath| -> Vec<usize> {
        p.edges
            .iter()
            .map(|e| g.edge_index(e).expect("path edge in graph"))
            .collect()
    };
    let paths1: Vec<Vec<usize>> = temporal::enumerate_time_respecting_paths(g1, delta, None, None)?
        .iter()
        .map(|p| as_indices(g1, p))
        .collect();
    let paths2: HashSet<Vec<usize>> = temporal::enumerate_time_respecting_paths(g2, delta, None, None)?
        .iter()
        .map(|p| as_indices(g2, p))
        .collect();
    if paths1.len() != paths2.len() {
        return Ok(IsoResult::not_isomorphic());
    }

    let group = |g: &TemporalGraph| {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            m.entry((e.src.0, e.dst.0)).or_default().push(i);
        }
        m
    };
    let pairs1: Vec<(usize, usize, Vec<usize>)> = group(g1).into_iter().map(|((u, v), es)| (u, v, es)).collect();
    let pairs2 = group(g2);

    fn assign(
        level: usize,
        blocks: &[(&[usize], &[usize])],
        edge_map: &mut Vec<usize>,
        paths1: &[Vec<usize>],
        paths2: &HashSet<Vec<usize>>,
    ) -> bool {
        if level == blocks.len() {
            return paths1
                .iter()
                .all(|p| paths2.contains(&p.iter().map(|&i| edge_map[i]).collect::<Vec<_>>()));
        }
        let (from, to) = blocks[level];
        for perm in to.iter().permutations(to.len()) {
            for (&a, &&b) in from.iter().zip(&perm) {
                edge_map[a] = b;
            }
            if assign(level + 1, blocks, edge_map, paths1, paths2) {
                return true;
            }
        }
        false
    }

    let n = g1.num_nodes();
    let mut edge_map = vec![UNMAPPED; g1.num_edges()];
    for perm in (0..n).permutations(n) {
        let mut blocks: Vec<(&[usize], &[usize])> = Vec::with_capacity(pairs1.len());
        let consistent = pairs1.iter().all(|(u, v, es)| match pairs2.get(&(perm[*u], perm[*v])) {
            Some(targets) if targets.len() == es.len() => {
                blocks.push((es, targets));
                true
            }
            _ => false,
        });
        if !consistent {
            continue;
        }
        if assign(0, &blocks, &mut edge_map, &paths1, &paths2) {
            let edges = g1
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| (*e, g2.edges()[edge_map[i]]))
                .collect();
            return Ok(IsoResult {
                verdict: Verdict::Isomorphic,
                node_map: Some(perm),
                edge_map: Some(edges),
            });
        }
    }
    Ok(IsoResult::not_isomorphic())
}

impl IsoResult {
    /// JSON verdict using external node names when available:
    /// `{"verdict": .., "node_map": {name: name}, "edge_map": [[from, to], ..]}`.
    pub fn to_json(&self, g1: Option<&TemporalGraph>, g2: Option<&TemporalGraph>) -> serde_json::Value {
        let name = |g: Option<&TemporalGraph>, v: usize| match g {
            Some(g) => g.node_name(NodeId(v)),
            None => v.to_string(),
        };
        let edge = |g: Option<&TemporalGraph>, e: &TimestampedEdge| serde_json::json!({"src": name(g, e.src.0), "dst": name(g, e.dst.0), "t": e.t});
        let node_map = self.node_map.as_ref().map(|m| {
            m.iter()
                .enumerate()
                .map(|(u, &v)| (name(g1, u), serde_json::Value::String(name(g2, v))))
                .collect::<serde_json::Map<_, _>>()
        });
        let edge_map = self.edge_map.as_ref().map(|m| {
            m.iter()
                .map(|(e, f)| serde_json::json!([edge(g1, e), edge(g2, f)]))
                .collect::<Vec<_>>()
        });
        serde_json::json!({
            "verdict": self.verdict,
            "node_map": node_map,
            "edge_map": edge_map,
        })
    }
}

//! Directed Weisfeiler-Leman color refinement (D-WL) and WL fingerprints.
//!
//! A node's color at round `t` is the dictionary id of
//! `(color at t-1, sorted in-neighbor multiset, sorted out-neighbor multiset)`.
//! Neighbor entries are `(color, edge weight)` pairs unless weights are
//! switched off. The dictionary assigns dense ids in insertion order, so ids
//! are injective by construction and comparable across every graph refined
//! with the same dictionary.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::static_graph::{Adjacency, StaticGraph};

/// Default number of refinement rounds.
pub const DEFAULT_ITERATIONS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// In- and out-neighbors kept in separate multisets.
    Directed,
    /// One multiset over all neighbors (classic 1-WL on the skeleton).
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlOptions {
    pub direction: Direction,
    pub use_weights: bool,
}

impl Default for WlOptions {
    fn default() -> Self {
        Self {
            direction: Direction::Directed,
            use_weights: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ColorKey {
    Initial(u32),
    Refined {
        prev: u64,
        ins: Vec<(u64, u64)>,
        outs: Vec<(u64, u64)>,
    },
}

static NEXT_EPOCH: AtomicU64 = AtomicU64::new(1);

/// Append-only map from refinement keys to dense color ids.
///
/// Not synchronized: callers that refine several graphs concurrently must
/// serialize access. Ids depend on the order in which graphs are refined.
#[derive(Debug)]
pub struct ColorDictionary {
    ids: HashMap<ColorKey, u64>,
    epoch: u64,
}

impl Default for ColorDictionary {
    fn default() -> Self {
        Self::new()
    }
}

impl ColorDictionary {
    pub fn new() -> Self {
        Self {
            ids: HashMap::new(),
            epoch: NEXT_EPOCH.fetch_add(1, Ordering::Relaxed),
        }
    }

    /// Identifies this dictionary; fingerprints from different epochs are not
    /// comparable.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn id(&mut self, key: ColorKey) -> u64 {
        let next = self.ids.len() as u64;
        *self.ids.entry(key).or_insert(next)
    }
}

/// Colors of every node for rounds `0..=K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    rounds: Vec<Vec<u64>>,
    stable_from: Option<usize>,
}

impl ColorAssignment {
    pub fn round(&self, t: usize) -> &[u64] {
        &self.rounds[t]
    }

    pub fn rounds(&self) -> &[Vec<u64>] {
        &self.rounds
    }

    /// `K`, the last round index.
    pub fn iterations(&self) -> usize {
        self.rounds.len() - 1
    }

    /// First round whose partition equals the previous round's, if reached.
    pub fn stable_from(&self) -> Option<usize> {
        self.stable_from
    }

    pub fn distinct_colors(&self, t: usize) -> usize {
        let mut c = self.rounds[t].clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Sorted color multiset of round `t`.
    pub fn multiset(&self, t: usize) -> Vec<u64> {
        let mut c = self.rounds[t].clone();
        c.sort_unstable();
        c
    }
}

// below this many nodes the per-round key construction stays sequential
const PARALLEL_THRESHOLD: usize = 4096;

fn refine_keys(colors: &[u64], out: &Adjacency, inc: &Adjacency, opts: WlOptions) -> Vec<ColorKey> {
    let key = |v: usize| {
        let w = |x: u64| if opts.use_weights { x } else { 0 };
        let mut ins: Vec<(u64, u64)> = inc[v].iter().map(|&(u, x)| (colors[u], w(x))).collect();
        let mut outs: Vec<(u64, u64)> = out[v].iter().map(|&(u, x)| (colors[u], w(x))).collect();
        if opts.direction == Direction::Undirected {
            ins.append(&mut outs);
        }
        ins.sort_unstable();
        outs.sort_unstable();
        ColorKey::Refined {
            prev: colors[v],
            ins,
            outs,
        }
    };
    if colors.len() >= PARALLEL_THRESHOLD {
        (0..colors.len()).into_par_iter().map(key).collect()
    } else {
        (0..colors.len()).map(key).collect()
    }
}

fn count_distinct(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Refine `g` for `iterations` rounds.
///
/// Once a round leaves the partition unchanged, later rounds repeat that
/// round's colors. Two graphs refined with one dictionary stop at the same
/// round whenever their color multisets agree up to it, so comparisons
/// between them are unaffected.
pub fn dwl_refine(g: &StaticGraph, iterations: usize, dict: &mut ColorDictionary, opts: WlOptions) -> ColorAssignment {
    let (out, inc) = g.adjacency();
    let initial: Vec<u64> = g.nodes().iter().map(|n| dict.id(ColorKey::Initial(n.label))).collect();
    let mut classes = count_distinct(&initial);
    let mut rounds = vec![initial];
    let mut stable_from = None;
    for t in 1..=iterations {
        let prev = rounds.last().expect("round 0 exists");
        if stable_from.is_some() {
            let copy = prev.clone();
            rounds.push(copy);
            continue;
        }
        let keys = refine_keys(prev, &out, &inc, opts);
        let next: Vec<u64> = keys.into_iter().map(|k| dict.id(k)).collect();
        let n = count_distinct(&next);
        if n == classes {
            stable_from = Some(t);
        }
        classes = n;
        rounds.push(next);
    }
    ColorAssignment { rounds, stable_from }
}

/// First round `t <= iterations` at which the color multisets of `g1` and
/// `g2` differ, refining both with one fresh dictionary.
pub fn first_distinguishing_round(
    g1: &StaticGraph,
    g2: &StaticGraph,
    iterations: usize,
    opts: WlOptions,
) -> Option<usize> {
    let mut dict = ColorDictionary::new();
    let c1 = dwl_refine(g1, iterations, &mut dict, opts);
    let c2 = dwl_refine(g2, iterations, &mut dict, opts);
    (0..=iterations).find(|&t| c1.multiset(t) != c2.multiset(t))
}

/// Whether D-WL tells `g1` and `g2` apart within `iterations` rounds.
pub fn dwl_distinguish(g1: &StaticGraph, g2: &StaticGraph, iterations: usize) -> bool {
    first_distinguishing_round(g1, g2, iterations, WlOptions::default()).is_some()
}

/// Sparse color histogram over rounds `0..=K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlFingerprint {
    pub counts: BTreeMap<u64, u64>,
    pub iterations: usize,
    pub epoch: u64,
}

impl WlFingerprint {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `{"epoch", "iterations", "indices", "values"}` sparse-vector JSON.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "epoch": self.epoch,
            "iterations": self.iterations,
            "indices": self.counts.keys().collect::<Vec<_>>(),
            "values": self.counts.values().collect::<Vec<_>>(),
        })
    }
}

pub fn wl_fingerprint(
    g: &StaticGraph,
    iterations: usize,
    dict: &mut ColorDictionary,
    opts: WlOptions,
) -> WlFingerprint {
    let colors = dwl_refine(g, iterations, dict, opts);
    let mut counts = BTreeMap::new();
    for round in colors.rounds() {
        for &c in round {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    WlFingerprint {
        counts,
        iterations,
        epoch: dict.epoch(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::repr::{build_augmented_event_graph, build_compressed_augmented_event_graph, CompressOptions};
    use crate::static_graph::Provenance;
    use crate::temporal::{Delta, NodeId};

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> StaticGraph {
        let mut g = StaticGraph::new();
        for v in 0..n {
            g.add_node(0, Provenance::Original { node: NodeId(v) });
        }
        for &(s, t, w) in edges {
            g.add_edge(s, t, w);
        }
        g
    }

    fn d2() -> Delta {
        Delta::new(2).unwrap()
    }

    #[test]
    fn cycle_is_monochromatic() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let mut dict = ColorDictionary::new();
        let c = dwl_refine(&g, 2, &mut dict, WlOptions::default());
        for t in 0..=2 {
            assert_eq!(c.distinct_colors(t), 1);
        }
        assert_eq!(c.stable_from(), Some(1));
    }

    #[test]
    fn path_gets_three_colors() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let mut dict = ColorDictionary::new();
        let c = dwl_refine(&g, 1, &mut dict, WlOptions::default());
        assert_eq!(c.distinct_colors(0), 1);
        assert_eq!(c.distinct_colors(1), 3);
    }

    #[test]
    fn fingerprint_counts() {
        let mut dict = ColorDictionary::new();
        let f = wl_fingerprint(&StaticGraph::new(), 3, &mut dict, WlOptions::default());
        assert!(f.counts.is_empty());

        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let f = wl_fingerprint(&g, 1, &mut dict, WlOptions::default());
        assert_eq!(f.counts.len(), 2);
        assert!(f.counts.values().all(|&c| c == 3));
        assert_eq!(f.total(), 6);
    }

    #[test]
    fn stable_copy_keeps_totals() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let mut dict = ColorDictionary::new();
        let f = wl_fingerprint(&g, 10, &mut dict, WlOptions::default());
        assert_eq!(f.total(), 11 * 4);
    }

    #[test]
    fn augmented_g1_g4_distinguished_early() {
        let a1 = build_augmented_event_graph(&fixtures::family_g1(), d2());
        let a4 = build_augmented_event_graph(&fixtures::family_g4(), d2());
        let t = first_distinguishing_round(&a1, &a4, 3, WlOptions::default()).unwrap();
        assert!(t <= 3);
        assert!(dwl_distinguish(&a1, &a4, 3));
    }

    #[test]
    fn isomorphic_pairs_not_distinguished() {
        let a1 = build_augmented_event_graph(&fixtures::family_g1(), d2());
        let a3 = build_augmented_event_graph(&fixtures::family_g3(), d2());
        for k in 0..6 {
            assert!(!dwl_distinguish(&a1, &a3, k));
        }
        let g = fixtures::showcase();
        let renamed = g.relabel(&[4, 2, 0, 1, 3], |e| e.t).unwrap();
        let a = build_augmented_event_graph(&g, d2());
        let b = build_augmented_event_graph(&renamed, d2());
        assert!(!dwl_distinguish(&a, &b, 5));
    }

    #[test]
    fn direction_sensitivity() {
        let chain = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let collider = graph(3, &[(0, 1, 1), (2, 1, 1)]);
        assert!(dwl_distinguish(&chain, &collider, 1));
        let undirected = WlOptions {
            direction: Direction::Undirected,
            use_weights: true,
        };
        assert_eq!(first_distinguishing_round(&chain, &collider, 5, undirected), None);
    }

    #[test]
    fn weights_distinguish_at_round_one() {
        let (c, _) = build_compressed_augmented_event_graph(&fixtures::showcase(), d2(), CompressOptions::default());
        let mut reweighted = StaticGraph::from_parts(
            c.nodes().to_vec(),
            c.edges().map(|mut e| {
                if e.weight == 2 {
                    e.weight = 3;
                }
                e
            }),
        )
        .unwrap();
        assert_eq!(
            first_distinguishing_round(&c, &reweighted, 3, WlOptions::default()),
            Some(1)
        );
        let unweighted = WlOptions {
            use_weights: false,
            ..WlOptions::default()
        };
        assert_eq!(first_distinguishing_round(&c, &reweighted, 3, unweighted), None);
        reweighted = c.clone();
        assert!(!dwl_distinguish(&c, &reweighted, 3));
    }

    #[test]
    fn fingerprint_json_shape() {
        let mut dict = ColorDictionary::new();
        let g = graph(2, &[(0, 1, 1)]);
        let f = wl_fingerprint(&g, 1, &mut dict, WlOptions::default());
        let v = f.to_json();
        assert_eq!(v["iterations"], 1);
        assert_eq!(
            v["indices"].as_array().unwrap().len(),
            v["values"].as_array().unwrap().len()
        );
        assert_eq!(v["epoch"], dict.epoch());
    }
}

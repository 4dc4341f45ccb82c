//! Seeded corpus of small temporal graph pairs shared by the integration
//! tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use causal_topology::gen::rng;
use causal_topology::{Delta, TemporalGraph, TimestampedEdge};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Independent,
    Permuted,
    Shifted,
    Retimed,
    Perturbed,
    TimesShuffled,
}

pub const KINDS: [PairKind; 6] = [
    PairKind::Independent,
    PairKind::Permuted,
    PairKind::Shifted,
    PairKind::Retimed,
    PairKind::Perturbed,
    PairKind::TimesShuffled,
];

#[derive(Debug, Clone)]
pub struct Case {
    pub kind: PairKind,
    pub delta: Delta,
    pub g1: TemporalGraph,
    pub g2: TemporalGraph,
}

fn build(n: usize, edges: Vec<TimestampedEdge>) -> Option<TemporalGraph> {
    let distinct: BTreeSet<_> = edges.iter().collect();
    if distinct.len() != edges.len() {
        return None;
    }
    TemporalGraph::new(n, edges).ok()
}

pub fn random_graph(r: &mut ChaCha8Rng, n: usize, m: usize, t_max: i64) -> TemporalGraph {
    loop {
        let edges = (0..m)
            .map(|_| TimestampedEdge::new(r.gen_range(0..n), r.gen_range(0..n), r.gen_range(1..=t_max)))
            .collect();
        if let Some(g) = build(n, edges) {
            return g;
        }
    }
}

fn transform(
    r: &mut ChaCha8Rng,
    g: &TemporalGraph,
    retime: impl Fn(&mut ChaCha8Rng, &[TimestampedEdge]) -> Vec<i64>,
) -> Option<TemporalGraph> {
    let n = g.num_nodes();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let times = retime(r, g.edges());
    let edges = g
        .edges()
        .iter()
        .zip(times)
        .map(|(e, t)| TimestampedEdge::new(perm[e.src.0], perm[e.dst.0], t))
        .collect();
    build(n, edges)
}

fn partner(r: &mut ChaCha8Rng, kind: PairKind, g: &TemporalGraph, t_max: i64) -> Option<TemporalGraph> {
    match kind {
        PairKind::Independent => Some(random_graph(r, g.num_nodes(), g.num_edges(), t_max)),
        PairKind::Permuted => transform(r, g, |_, es| es.iter().map(|e| e.t).collect()),
        PairKind::Shifted => {
            let shift = r.gen_range(-3..=3);
            transform(r, g, |_, es| es.iter().map(|e| e.t + shift).collect())
        }
        PairKind::Retimed => transform(r, g, |r, es| {
            // strictly increasing map of the distinct timestamps
            let distinct: BTreeSet<i64> = es.iter().map(|e| e.t).collect();
            let mut t = 0;
            let map: Vec<(i64, i64)> = distinct
                .into_iter()
                .map(|x| {
                    t += r.gen_range(1..=3);
                    (x, t)
                })
                .collect();
            es.iter()
                .map(|e| map.iter().find(|(x, _)| *x == e.t).expect("mapped").1)
                .collect()
        }),
        PairKind::Perturbed => transform(r, g, |r, es| {
            let i = r.gen_range(0..es.len());
            let d = if r.gen_bool(0.5) { 1 } else { -1 };
            es.iter()
                .enumerate()
                .map(|(j, e)| if j == i { e.t + d } else { e.t })
                .collect()
        }),
        PairKind::TimesShuffled => transform(r, g, |r, es| {
            let mut ts: Vec<i64> = es.iter().map(|e| e.t).collect();
            ts.shuffle(r);
            ts
        }),
    }
}

/// `count` pairs with at most `max_nodes` nodes and `max_edges` edges,
/// cycling through every pair kind and waiting times 1 to 3.
pub fn corpus(seed: u64, count: usize, max_nodes: usize, max_edges: usize) -> Vec<Case> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let i = out.len();
        let kind = KINDS[i % KINDS.len()];
        let delta = Delta::new(1 + (i / KINDS.len()) as i64 % 3).expect("positive");
        let n = r.gen_range(2..=max_nodes);
        let m = r.gen_range(1..=max_edges);
        let g1 = random_graph(&mut r, n, m, 6);
        if let Some(g2) = partner(&mut r, kind, &g1, 6) {
            out.push(Case { kind, delta, g1, g2 });
        }
    }
    out
}

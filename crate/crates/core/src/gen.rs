//! Random generators: regular and two-community static graphs, random-walk
//! temporal graphs, timestamp shuffling, and community-biased walks.
//!
//! All randomness comes from ChaCha8 seeded with a `u64`, so a seed gives the
//! same output on every platform. Per-item seeds inside a batch are
//! `base ^ index` (see [`derived_seed`]).

use std::collections::{BTreeSet, HashSet};

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repr::ORIGINAL_LABEL;
use crate::static_graph::{Provenance, StaticGraph};
use crate::temporal::{GraphError, NodeId, TemporalGraph, TimestampedEdge};

pub type RngSeed = u64;

/// Attempts made by the pairing model and the shuffle before giving up.
pub const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("no simple {k}-regular graph on {n} nodes")]
    InfeasibleDegree { n: usize, k: usize },
    #[error("gave up after {0} attempts")]
    RetriesExhausted(usize),
    #[error("{requested} bridges requested but only {available} cross pairs exist")]
    TooManyBridges { requested: usize, available: usize },
    #[error("node {0} has no edges")]
    IsolatedNode(usize),
    #[error("walk reached node {0}, which has no out-neighbors")]
    DeadEnd(usize),
    #[error("walk length must be at least 1")]
    ZeroWalkLength,
    #[error("alpha {0} outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("sigma {0} outside (-1, 1)")]
    InvalidSigma(f64),
    #[error("community assignment covers {assigned} nodes, graph has {nodes}")]
    CommunityMismatch { assigned: usize, nodes: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn rng(seed: RngSeed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of the `index`-th item generated from `base`.
pub fn derived_seed(base: RngSeed, index: usize) -> RngSeed {
    base ^ index as u64
}

/// Community id (0 or 1) of every node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityAssignment(Vec<u8>);

impl CommunityAssignment {
    /// First `n1` nodes in community 0, next `n2` in community 1.
    pub fn blocks(n1: usize, n2: usize) -> Self {
        let mut c = vec![0; n1];
        c.resize(n1 + n2, 1);
        CommunityAssignment(c)
    }

    pub fn community(&self, v: NodeId) -> u8 {
        self.0[v.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sizes(&self) -> [usize; 2] {
        let ones = self.0.iter().filter(|&&c| c == 1).count();
        [self.0.len() - ones, ones]
    }
}

/// Second-order walk bias towards (σ > 0) or away from (σ < 0) length-two
/// paths that end in a different community than they started.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaBias {
    communities: CommunityAssignment,
    sigma: f64,
}

impl SigmaBias {
    pub fn new(communities: CommunityAssignment, sigma: f64) -> Result<Self, GenError> {
        if !(sigma > -1.0 && sigma < 1.0) {
            return Err(GenError::InvalidSigma(sigma));
        }
        Ok(SigmaBias { communities, sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn communities(&self) -> &CommunityAssignment {
        &self.communities
    }
}

/// Transition probabilities over `candidates` after arriving from `previous`.
///
/// Each candidate starts with equal weight, scaled by `1 + sigma` when it lies
/// in a different community than `previous` and by `1 - sigma` otherwise.
pub fn sigma_bias(previous: NodeId, candidates: &[NodeId], communities: &CommunityAssignment, sigma: f64) -> Vec<f64> {
    let from = communities.community(previous);
    let w: Vec<f64> = candidates
        .iter()
        .map(|&c| {
            if communities.community(c) != from {
                1.0 + sigma
            } else {
                1.0 - sigma
            }
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn undirected_graph(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> StaticGraph {
    let mut g = StaticGraph::new();
    for v in 0..n {
        g.add_node(ORIGINAL_LABEL, Provenance::Original { node: NodeId(v) });
    }
    for (u, v) in pairs {
        g.add_edge(u, v, 1);
        g.add_edge(v, u, 1);
    }
    g
}

fn pairing(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<BTreeSet<(usize, usize)>, GenError> {
    if k >= n.max(1) || (n * k) % 2 == 1 {
        return Err(GenError::InfeasibleDegree { n, k });
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'attempt: for _ in 0..MAX_RETRIES {
        stubs.shuffle(rng);
        let mut pairs = BTreeSet::new();
        for s in stubs.chunks(2) {
            let (u, v) = (s[0].min(s[1]), s[0].max(s[1]));
            if u == v || !pairs.insert((u, v)) {
                continue 'attempt;
            }
        }
        return Ok(pairs);
    }
    Err(GenError::RetriesExhausted(MAX_RETRIES))
}

/// Uniform simple `k`-regular graph on `n` nodes, stored with both edge
/// directions at weight 1.
pub fn k_regular_random_graph(n: usize, k: usize, seed: RngSeed) -> Result<StaticGraph, GenError> {
    let pairs = pairing(n, k, &mut rng(seed))?;
    Ok(undirected_graph(n, pairs))
}

/// Two independent `k`-regular communities of sizes `n1` and `n2` joined by
/// `bridges` distinct random cross edges.
pub fn two_community_graph(
    n1: usize,
    n2: usize,
    k: usize,
    bridges: usize,
    seed: RngSeed,
) -> Result<(StaticGraph, CommunityAssignment), GenError> {
    let available = n1 * n2;
    if bridges > available {
        return Err(GenError::TooManyBridges {
            requested: bridges,
            available,
        });
    }
    let mut r = rng(seed);
    let a = pairing(n1, k, &mut r)?;
    let b = pairing(n2, k, &mut r)?;
    let cross = rand::seq::index::sample(&mut r, available, bridges);
    let pairs = a
        .into_iter()
        .chain(b.into_iter().map(|(u, v)| (u + n1, v + n1)))
        .chain(cross.into_iter().map(|i| (i / n2, n1 + i % n2)));
    Ok((undirected_graph(n1 + n2, pairs), CommunityAssignment::blocks(n1, n2)))
}

/// Temporal graph made of `num_walks` random walks of `walk_len` steps on
/// `base`.
///
/// Step `i` of walk `j` happens at `j * (walk_len + 1) + i + 1`, so steps of
/// one walk are consecutive and walks are separated by an unused time unit.
/// Walks start at a uniform node. With `bias`, every step after the first is
/// drawn from [`sigma_bias`]; otherwise steps are uniform over out-neighbors.
pub fn walk_temporal_graph(
    base: &StaticGraph,
    num_walks: usize,
    walk_len: usize,
    seed: RngSeed,
    bias: Option<&SigmaBias>,
) -> Result<TemporalGraph, GenError> {
    if walk_len == 0 {
        return Err(GenError::ZeroWalkLength);
    }
    let n = base.num_nodes();
    if let Some(b) = bias {
        if b.communities.len() != n {
            return Err(GenError::CommunityMismatch {
                assigned: b.communities.len(),
                nodes: n,
            });
        }
    }
    if n == 0 && num_walks > 0 {
        return Err(GenError::IsolatedNode(0));
    }
    let (out, inc) = base.adjacency();
    if let Some(v) = (0..n).find(|&v| out[v].is_empty() && inc[v].is_empty()) {
        return Err(GenError::IsolatedNode(v));
    }
    let neighbors: Vec<Vec<NodeId>> = out
        .iter()
        .map(|a| a.iter().map(|&(v, _)| NodeId(v)).collect())
        .collect();

    let mut r = rng(seed);
    let mut edges = Vec::with_capacity(num_walks * walk_len);
    for j in 0..num_walks {
        let mut prev: Option<usize> = None;
        let mut cur = r.gen_range(0..n);
        for i in 0..walk_len {
            let cands = &neighbors[cur];
            if cands.is_empty() {
                return Err(GenError::DeadEnd(cur));
            }
            let next = match (bias, prev) {
                (Some(b), Some(p)) => {
                    let probs = sigma_bias(NodeId(p), cands, &b.communities, b.sigma);
                    let dist = WeightedIndex::new(&probs).expect("probabilities are positive");
                    cands[dist.sample(&mut r)].0
                }
                _ => cands[r.gen_range(0..cands.len())].0,
            };
            let t = (j * (walk_len + 1) + i + 1) as i64;
            edges.push(TimestampedEdge::new(cur, next, t));
            prev = Some(cur);
            cur = next;
        }
    }
    Ok(TemporalGraph::new(n, edges)?)
}

/// Permute the timestamps of `⌈alpha·|E|⌉` uniformly chosen edges among
/// themselves.
///
/// A permutation that would create a duplicate `(src, dst, t)` is redrawn.
pub fn shuffle_timestamps(g: &TemporalGraph, alpha: f64, seed: RngSeed) -> Result<TemporalGraph, GenError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(GenError::InvalidAlpha(alpha));
    }
    let m = g.num_edges();
    // tolerate float noise such as 0.3 * 10 = 3.0000000000000004
    let count = ((alpha * m as f64 - 1e-9).ceil().max(0.0) as usize).min(m);
    let mut r = rng(seed);
    let chosen = rand::seq::index::sample(&mut r, m, count).into_vec();
    let original = g.edges();
    let mut times: Vec<i64> = chosen.iter().map(|&i| original[i].t).collect();

    for _ in 0..MAX_RETRIES {
        times.shuffle(&mut r);
        let mut edges = original.to_vec();
        for (&i, &t) in chosen.iter().zip(&times) {
            edges[i].t = t;
        }
        let mut seen = HashSet::with_capacity(m);
        if edges.iter().all(|e| seen.insert(*e)) {
            let shuffled = TemporalGraph::new(g.num_nodes(), edges)?;
            return Ok(match g.names() {
                Some(names) => shuffled.with_names(names.to_vec())?,
                None => shuffled,
            });
        }
    }
    Err(GenError::RetriesExhausted(MAX_RETRIES))
}

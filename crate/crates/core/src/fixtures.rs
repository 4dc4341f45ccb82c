//! Small reference temporal graphs used throughout the tests and docs.
//!
//! * `showcase`: pairs `ab, bd, cd, de` at times `{1,5}, {2,6}, {3,7}, {4,8}`.
//! * `family_g1` .. `family_g5`: five variants of the path `a->b->d<-c, d->e`
//!   with different timestamps (intended for waiting time 2).
//! * `twin_*`: two graphs over `a,b,c,d` whose event graphs have four
//!   isomorphic components each but different τ-equivalence classes.

use crate::static_graph::{Provenance, StaticGraph};
use crate::temporal::{TemporalGraph, TimestampedEdge};

fn named(triples: &[(&str, &str, i64)]) -> TemporalGraph {
    TemporalGraph::from_named_edges(triples).expect("fixture is valid")
}

pub fn showcase() -> TemporalGraph {
    named(&[
        ("a", "b", 1),
        ("a", "b", 5),
        ("b", "d", 2),
        ("b", "d", 6),
        ("c", "d", 3),
        ("c", "d", 7),
        ("d", "e", 4),
        ("d", "e", 8),
    ])
}

fn family(ab: i64, bd: i64, cd: i64, de: &[i64]) -> TemporalGraph {
    let mut t = vec![("a", "b", ab), ("b", "d", bd), ("c", "d", cd)];
    t.extend(de.iter().map(|&x| ("d", "e", x)));
    named(&t)
}

pub fn family_g1() -> TemporalGraph {
    family(1, 2, 3, &[4])
}

pub fn family_g2() -> TemporalGraph {
    family(2, 3, 4, &[5])
}

pub fn family_g3() -> TemporalGraph {
    family(1, 3, 2, &[4])
}

pub fn family_g4() -> TemporalGraph {
    family(1, 2, 3, &[1])
}

pub fn family_g5() -> TemporalGraph {
    family(1, 2, 3, &[4, 5])
}

/// Node names of the `twin_*` graphs, by index.
pub const TWIN_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// `(ab, bc adjacent to ab, other bc, cd)` timestamps per component.
const TWIN_TIMES_1: [[i64; 4]; 4] = [[1, 3, 4, 6], [11, 13, 14, 16], [21, 22, 21, 23], [31, 32, 31, 33]];
const TWIN_TIMES_2: [[i64; 4]; 4] = [[1, 3, 4, 6], [11, 12, 11, 13], [21, 22, 21, 23], [31, 32, 31, 33]];

fn hand_event_graph(components: &[[i64; 4]; 4]) -> StaticGraph {
    let mut g = StaticGraph::new();
    for &[ab, bc_adj, bc_other, cd] in components {
        let ev = |u, v, t| Provenance::Event {
            edge: TimestampedEdge::new(u, v, t),
        };
        let n_ab = g.add_node(1, ev(0, 1, ab));
        let n_adj = g.add_node(1, ev(1, 2, bc_adj));
        let n_other = g.add_node(1, ev(1, 2, bc_other));
        let n_cd = g.add_node(1, ev(2, 3, cd));
        g.add_edge(n_ab, n_adj, 1);
        g.add_edge(n_adj, n_cd, 1);
        g.add_edge(n_other, n_cd, 1);
    }
    g
}

/// The first uncompressed event graph, arcs fixed by hand.
pub fn twin_event_graph_1() -> StaticGraph {
    hand_event_graph(&TWIN_TIMES_1)
}

/// The second uncompressed event graph, arcs fixed by hand.
pub fn twin_event_graph_2() -> StaticGraph {
    hand_event_graph(&TWIN_TIMES_2)
}

// The hand-built components with `bc` before `bc'` end in cd^6 / cd^16, which
// would need waiting time 3 for bc^3 -> cd^6 but forbid ab^1 -> bc^4 (also a
// gap of 3). Moving cd one step earlier realizes the same arcs and the same
// τ-classes with waiting time 2.
fn realized(components: &[[i64; 4]; 4]) -> TemporalGraph {
    let mut edges = Vec::new();
    for &[ab, bc_adj, bc_other, cd] in components {
        let cd = if bc_adj < bc_other { cd - 1 } else { cd };
        edges.push(TimestampedEdge::new(0, 1, ab));
        edges.push(TimestampedEdge::new(1, 2, bc_adj));
        edges.push(TimestampedEdge::new(1, 2, bc_other));
        edges.push(TimestampedEdge::new(2, 3, cd));
    }
    TemporalGraph::new(4, edges)
        .and_then(|g| g.with_names(TWIN_NAMES.iter().map(|s| s.to_string()).collect()))
        .expect("fixture is valid")
}

/// Temporal graph whose event graph at waiting time 2 has the arcs of
/// [`twin_event_graph_1`].
pub fn twin_temporal_1() -> TemporalGraph {
    realized(&TWIN_TIMES_1)
}

/// Temporal graph whose event graph at waiting time 2 has the arcs of
/// [`twin_event_graph_2`].
pub fn twin_temporal_2() -> TemporalGraph {
    realized(&TWIN_TIMES_2)
}

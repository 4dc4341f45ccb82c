//! Causal topology of temporal graphs.
//!
//! Temporal graphs with timestamped directed edges, their static
//! representations (event graphs, augmented and compressed augmented event
//! graphs, time-aggregated and time-concatenated graphs, snapshots), exact
//! tests for four notions of temporal graph isomorphism, directed
//! Weisfeiler-Leman refinement, the two synthetic generators and a
//! WL-fingerprint classification harness.

pub mod bench;
pub mod fixtures;
pub mod gen;
pub mod io;
pub mod iso;
pub mod repr;
pub mod static_graph;
pub mod temporal;
pub mod wl;

pub use static_graph::{Adjacency, NodeRecord, Provenance, StaticEdge, StaticGraph};
pub use temporal::{Delta, GraphError, NodeId, TemporalGraph, TemporalPath, TimestampedEdge};

/// Version of the on-disk formats (CSV/NDJSON edge lists, graph JSON,
/// fingerprint JSON, experiment CSV).
pub const FORMAT_VERSION: u32 = 1;

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

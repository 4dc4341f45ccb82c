//! Edge-list readers and writers for temporal graphs.
//!
//! CSV: one `src,dst,t` record per line with an optional `src,dst,t` header.
//! NDJSON: one `{"src": .., "dst": .., "t": ..}` object per line; `src` and
//! `dst` may be strings or integers and are treated as node names.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::temporal::{TemporalGraph, TimestampedEdge};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Ndjson,
}

impl Format {
    /// Guess the format from a file name; anything not `.ndjson`/`.jsonl` is CSV.
    pub fn from_path(path: &str) -> Self {
        if path.ends_with(".ndjson") || path.ends_with(".jsonl") {
            Format::Ndjson
        } else {
            Format::Csv
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "ndjson" | "jsonl" => Ok(Format::Ndjson),
            other => Err(format!("unknown edge-list format {other:?}")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("input contains no edges")]
    EmptyInput,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate edge ({src},{dst},{t})")]
    DuplicateEdge {
        line: usize,
        src: String,
        dst: String,
        t: i64,
    },
}

struct Builder {
    names: Vec<String>,
    ids: HashMap<String, usize>,
    edges: Vec<TimestampedEdge>,
    seen: HashSet<(usize, usize, i64)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            names: Vec::new(),
            ids: HashMap::new(),
            edges: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len();
        self.ids.insert(name.to_string(), id);
        self.names.push(name.to_string());
        id
    }

    fn push(&mut self, line: usize, src: &str, dst: &str, t: i64) -> Result<(), ParseError> {
        let u = self.intern(src);
        let v = self.intern(dst);
        if !self.seen.insert((u, v, t)) {
            return Err(ParseError::DuplicateEdge {
                line,
                src: src.to_string(),
                dst: dst.to_string(),
                t,
            });
        }
        self.edges.push(TimestampedEdge::new(u, v, t));
        Ok(())
    }

    fn finish(self) -> Result<TemporalGraph, ParseError> {
        if self.edges.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        let malformed = |e: crate::temporal::GraphError| ParseError::Malformed {
            line: 0,
            message: e.to_string(),
        };
        TemporalGraph::new(self.names.len(), self.edges)
            .and_then(|g| g.with_names(self.names))
            .map_err(malformed)
    }
}

/// Parse an edge list. Node ids are assigned in order of first appearance.
pub fn parse_temporal_graph(text: &str, format: Format) -> Result<TemporalGraph, ParseError> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Ndjson => parse_ndjson(text),
    }
}

fn parse_csv(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut builder = Builder::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ParseError::Malformed {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(i + 1);
        if record.len() != 3 {
            return Err(ParseError::Malformed {
                line,
                message: format!("expected 3 fields src,dst,t, found {}", record.len()),
            });
        }
        if i == 0 && &record[0] == "src" && &record[1] == "dst" && &record[2] == "t" {
            continue;
        }
        let t: i64 = record[2].parse().map_err(|_| ParseError::Malformed {
            line,
            message: format!("timestamp {:?} is not a 64-bit integer", &record[2]),
        })?;
        if record[0].is_empty() || record[1].is_empty() {
            return Err(ParseError::Malformed {
                line,
                message: "empty node name".into(),
            });
        }
        builder.push(line, &record[0], &record[1], t)?;
    }
    builder.finish()
}

#[derive(Deserialize)]
struct EdgeRecord {
    src: Value,
    dst: Value,
    t: i64,
}

fn node_name(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.is_empty() => Some(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

fn parse_ndjson(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut builder = Builder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: EdgeRecord = serde_json::from_str(raw).map_err(|e| ParseError::Malformed {
            line,
            message: e.to_string(),
        })?;
        let (Some(src), Some(dst)) = (node_name(&rec.src), node_name(&rec.dst)) else {
            return Err(ParseError::Malformed {
                line,
                message: "src and dst must be non-empty strings or integers".into(),
            });
        };
        builder.push(line, &src, &dst, rec.t)?;
    }
    builder.finish()
}

/// Write `g` as CSV with a `src,dst,t` header, edges in canonical order.
pub fn write_csv(g: &TemporalGraph) -> String {
    let mut out = String::from("src,dst,t\n");
    for e in g.edges() {
        let _ = writeln!(out, "{},{},{}", g.node_name(e.src), g.node_name(e.dst), e.t);
    }
    out
}

pub fn write_ndjson(g: &TemporalGraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let obj = serde_json::json!({
            "src": g.node_name(e.src),
            "dst": g.node_name(e.dst),
            "t": e.t,
        });
        let _ = writeln!(out, "{obj}");
    }
    out
}

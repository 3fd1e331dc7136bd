//! Plain-text graph format.
//!
//! ```text
//! n m
//! u v
//! ...
//! ```
//!
//! Vertex ids are 0-based. The writer emits `u < v` pairs in lexicographic
//! order; the reader accepts either orientation and any order.

use std::fmt::Write as _;

use adiamis_core::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GraphParseError {
    #[error("line 1: expected header \"n m\"")]
    Header,
    #[error("line {0}: expected two vertex ids \"u v\"")]
    EdgeLine(usize),
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCount { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: adiamis_core::Error,
    },
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn read_graph(text: &str) -> Result<Graph, GraphParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or(GraphParseError::Header)?;
    let (n, m) = parse_pair(header).ok_or(GraphParseError::Header)?;

    let mut edges = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for (no, line) in lines {
        edges.push(parse_pair(line).ok_or(GraphParseError::EdgeLine(no))?);
        line_of.push(no);
    }
    if edges.len() != m {
        return Err(GraphParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, &edges).map_err(|source| GraphParseError::Invalid {
        line: offending_line(&edges, &source).map_or(1, |k| line_of[k]),
        source,
    })
}

/// Index of the edge that triggered `err`, if it names one.
fn offending_line(edges: &[(usize, usize)], err: &adiamis_core::Error) -> Option<usize> {
    use adiamis_core::Error as E;
    match *err {
        E::SelfLoop(v) => edges.iter().position(|&(a, b)| a == v && b == v),
        E::VertexOutOfRange { vertex, .. } => edges.iter().position(|&(a, b)| a == vertex || b == vertex),
        E::DuplicateEdge(u, v) => edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| (a.min(b), a.max(b)) == (u, v))
            .nth(1)
            .map(|(k, _)| k),
        _ => None,
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

//! The edge-list text format.
//!
//! ```text
//! # comment lines start with '#'; blank lines are ignored
//! 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! A stream may hold several graphs back to back; after `m` edge lines the
//! next content line is a new header.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    NotANumber(String),
    TokenCount { expected: usize, found: usize },
    MissingEdges { expected: usize, found: usize },
    /// More content after the single expected graph.
    TrailingContent,
    Graph(GraphError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "no graph found"),
            ParseErrorKind::NotANumber(t) => write!(f, "expected a non-negative integer, found `{t}`"),
            ParseErrorKind::TokenCount { expected, found } => write!(f, "expected {expected} fields, found {found}"),
            ParseErrorKind::MissingEdges { expected, found } => {
                write!(f, "header announces {expected} edges but only {found} follow")
            }
            ParseErrorKind::TrailingContent => write!(f, "unexpected content after the graph"),
            ParseErrorKind::Graph(e) => write!(f, "{e}"),
        }
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Splits a line into exactly two non-negative integers, each with its column.
fn pair(line_no: usize, line: &str) -> Result<[(usize, usize); 2], ParseError> {
    let mut fields = Vec::new();
    let mut col = 0;
    for part in line.split(|c: char| c.is_ascii_whitespace()) {
        if !part.is_empty() {
            fields.push((col + 1, part));
        }
        col += part.len() + 1;
    }
    if fields.len() != 2 {
        let column = fields.get(2).map_or(1, |f| f.0);
        return Err(ParseError {
            line: line_no,
            column,
            kind: ParseErrorKind::TokenCount { expected: 2, found: fields.len() },
        });
    }
    let num = |(column, tok): (usize, &str)| {
        tok.parse::<usize>().map(|v| (v, column)).map_err(|_| ParseError {
            line: line_no,
            column,
            kind: ParseErrorKind::NotANumber(tok.to_string()),
        })
    };
    Ok([num(fields[0])?, num(fields[1])?])
}

/// Parses every graph in `text`.
pub fn parse_edge_lists(text: &str) -> Result<Vec<Graph>, ParseError> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some((hl, header)) = lines.next() {
        let [(n, _), (m, _)] = pair(hl, header)?;
        let mut pairs = Vec::with_capacity(m);
        let mut last = hl;
        for found in 0..m {
            let Some((l, line)) = lines.next() else {
                return Err(ParseError {
                    line: last,
                    column: 1,
                    kind: ParseErrorKind::MissingEdges { expected: m, found },
                });
            };
            pairs.push((l, pair(l, line)?));
            last = l;
        }
        let mut edges = Vec::with_capacity(m);
        for &(l, [(a, ca), (b, cb)]) in &pairs {
            let bad = if a >= n {
                Some((GraphError::VertexOutOfRange { vertex: a, n }, ca))
            } else if b >= n {
                Some((GraphError::VertexOutOfRange { vertex: b, n }, cb))
            } else if a == b {
                Some((GraphError::SelfLoop(a), ca))
            } else {
                None
            };
            if let Some((e, column)) = bad {
                return Err(ParseError { line: l, column, kind: ParseErrorKind::Graph(e) });
            }
            edges.push((a, b));
        }
        let g = Graph::new(n, edges).map_err(|e| {
            let l = match &e {
                GraphError::DuplicateEdge(d) => pairs
                    .iter()
                    .filter(|(_, [(a, _), (b, _)])| (*a.min(b), *a.max(b)) == (d.u(), d.v()))
                    .nth(1)
                    .map_or(hl, |p| p.0),
                _ => hl,
            };
            ParseError { line: l, column: 1, kind: ParseErrorKind::Graph(e) }
        })?;
        out.push(g);
    }
    Ok(out)
}

/// Parses exactly one graph.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut all = parse_edge_lists(text)?;
    match all.len() {
        0 => Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::Empty }),
        1 => Ok(all.remove(0)),
        _ => {
            let second = content_lines(text).nth(1 + all[0].m()).map_or(1, |(l, _)| l);
            Err(ParseError { line: second, column: 1, kind: ParseErrorKind::TrailingContent })
        }
    }
}

/// Canonical text: header, then edges in sorted order, one per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.n(), g.m()).expect("writing to a String");
    for e in g.edges() {
        writeln!(s, "{} {}", e.u(), e.v()).expect("writing to a String");
    }
    s
}

//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = fields
            .next()
            .ok_or_else(|| syntax(line_no, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| syntax(line_no, format!("`{tok}` is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(syntax(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// Parses the edge-list format; diagnostics carry 1-based line numbers.
pub fn parse(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(header_line, header)?;
    if n > MAX_VERTICES {
        return Err(syntax(
            header_line,
            format!("{n} vertices exceeds the limit of {MAX_VERTICES}"),
        ));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        if u >= v {
            return Err(syntax(
                line_no,
                format!("edge `{u} {v}` must satisfy u < v"),
            ));
        }
        if v >= n {
            return Err(syntax(
                line_no,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        if !seen.insert((u, v)) {
            return Err(syntax(line_no, format!("duplicate edge `{u} {v}`")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges).expect("edges validated above"))
}

/// Writes `g` with edges in increasing order.
pub fn write(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_file(path: &Path) -> Result<Graph, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text).map_err(|e| match e {
        ParseError::Syntax { line, message } => ParseError::Io {
            path: path.display().to_string(),
            message: format!("line {line}: {message}"),
        },
        other => ParseError::Io {
            path: path.display().to_string(),
            message: other.to_string(),
        },
    })
}

//! Text formats: plain edge lists (`n m` header, 0-based `u v` lines) and
//! DIMACS (`p edge n m`, 1-based `e u v` lines, `c` comments).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Edgelist,
    Dimacs,
    Json,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn number(tok: Option<&str>, line: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, "expected a number"))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("not a non-negative integer: {tok:?}")))
}

pub fn parse(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Edgelist => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
        Format::Json => serde_json::from_str(text).map_err(|e| syntax(e.line(), e.to_string())),
    }
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut tok = header.split_whitespace();
    let n = number(tok.next(), hl)?;
    let m = number(tok.next(), hl)?;
    if tok.next().is_some() {
        return Err(syntax(hl, "trailing tokens in header"));
    }
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut tok = line.split_whitespace();
        let u = number(tok.next(), ln)?;
        let v = number(tok.next(), ln)?;
        if tok.next().is_some() {
            return Err(syntax(ln, "trailing tokens"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(ln, "second problem line"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(syntax(ln, "expected `p edge n m`")),
                }
                header = Some((number(tok.next(), ln)?, number(tok.next(), ln)?));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| syntax(ln, "edge before problem line"))?;
                let u = number(tok.next(), ln)?;
                let v = number(tok.next(), ln)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(syntax(ln, format!("endpoint out of 1..={n}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(syntax(ln, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write(g: &Graph, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list(g),
        Format::Dimacs => write_dimacs(g),
        Format::Json => serde_json::to_string(g).unwrap(),
    }
}

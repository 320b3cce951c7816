//! Line-oriented text formats for instances and solutions.
//!
//! Instance:
//!
//! ```text
//! c optional comment
//! p sdm <nx> <ny> <m>
//! e <x> <y>          (m lines, 1-based)
//! s <x1> <x2> ...    (optional, 1-based; absent means S is empty)
//! ```
//!
//! Solution:
//!
//! ```text
//! RESULT yes
//! M1 <x>:<y> ...
//! M2 <x>:<y> ...
//! ```
//!
//! or just `RESULT no`. Lines starting with `c` are comments everywhere.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{BipartiteGraph, Edge, GraphError, Matching, SPair, SdmInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Yields `(1-based line number, trimmed line)` for every non-blank,
/// non-comment line.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| syntax(line, format!("{what} must be a nonnegative integer, got `{tok}`")))
}

fn parse_index(tok: &str, line: usize, bound: usize, what: &str) -> Result<usize, ParseError> {
    let v =
        tok.parse::<usize>().map_err(|_| syntax(line, format!("{what} must be a positive integer, got `{tok}`")))?;
    if v == 0 || v > bound {
        return Err(syntax(line, format!("{what} {v} out of range 1..={bound}")));
    }
    Ok(v - 1)
}

/// Parses an SDM instance.
pub fn parse_instance(text: &str) -> Result<SdmInstance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut s: Option<Vec<usize>> = None;

    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let directive = toks.next().unwrap_or_default();
        match directive {
            "p" => {
                if header.is_some() {
                    return Err(syntax(ln, "duplicate `p` line"));
                }
                if toks.next() != Some("sdm") {
                    return Err(syntax(ln, "expected `p sdm <nx> <ny> <m>`"));
                }
                let nx = parse_count(toks.next(), ln, "nx")?;
                let ny = parse_count(toks.next(), ln, "ny")?;
                let m = parse_count(toks.next(), ln, "m")?;
                if toks.next().is_some() {
                    return Err(syntax(ln, "trailing tokens after header"));
                }
                header = Some((nx, ny, m));
            }
            "e" => {
                let (nx, ny, _) = header.ok_or_else(|| syntax(ln, "`e` before `p` line"))?;
                let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
                    return Err(syntax(ln, "expected `e <x> <y>`"));
                };
                let x = parse_index(a, ln, nx, "x-index")?;
                let y = parse_index(b, ln, ny, "y-index")?;
                edges.push(Edge { x, y });
            }
            "s" => {
                let (nx, _, _) = header.ok_or_else(|| syntax(ln, "`s` before `p` line"))?;
                if s.is_some() {
                    return Err(syntax(ln, "duplicate `s` line"));
                }
                let xs = toks.map(|t| parse_index(t, ln, nx, "S member")).collect::<Result<Vec<_>, _>>()?;
                s = Some(xs);
            }
            other => return Err(ParseError::UnknownDirective { line: ln, directive: other.to_string() }),
        }
    }

    let (nx, ny, m) = header.ok_or(ParseError::Missing("p sdm"))?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount { declared: m, found: edges.len() });
    }
    let graph = BipartiteGraph::new(nx, ny, edges)?;
    Ok(SdmInstance::new(graph, s.unwrap_or_default())?)
}

/// Parses a bare graph; an `s` line, if present, is accepted and ignored.
pub fn parse_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    Ok(parse_instance(text)?.graph().clone())
}

/// Canonical text of a graph: sorted edges, no `s` line.
pub fn write_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("p sdm {} {} {}\n", g.nx(), g.ny(), g.num_edges());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.x + 1, e.y + 1);
    }
    out
}

/// Canonical text of an instance. The `s` line is omitted when S is empty.
pub fn write_instance(inst: &SdmInstance) -> String {
    let mut out = write_graph(inst.graph());
    if !inst.s_set().is_empty() {
        out.push('s');
        for &x in inst.s_set() {
            let _ = write!(out, " {}", x + 1);
        }
        out.push('\n');
    }
    out
}

/// A labelled matching line, e.g. `M1 1:2 2:1`.
pub fn write_matching_line(label: &str, m: &Matching) -> String {
    let mut out = label.to_string();
    for e in m {
        let _ = write!(out, " {}:{}", e.x + 1, e.y + 1);
    }
    out.push('\n');
    out
}

/// The claim made by a solution file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Yes(SPair),
    No,
}

pub fn write_solution(sol: &Solution) -> String {
    match sol {
        Solution::No => "RESULT no\n".to_string(),
        Solution::Yes(p) => {
            let mut out = "RESULT yes\n".to_string();
            out.push_str(&write_matching_line("M1", &p.m1));
            out.push_str(&write_matching_line("M2", &p.m2));
            out
        }
    }
}

fn parse_pairs<'a>(toks: impl Iterator<Item = &'a str>, ln: usize) -> Result<Matching, ParseError> {
    let mut m = Matching::new();
    for t in toks {
        let (a, b) = t.split_once(':').ok_or_else(|| syntax(ln, format!("expected `<x>:<y>`, got `{t}`")))?;
        let x = parse_index(a, ln, usize::MAX, "x-index")?;
        let y = parse_index(b, ln, usize::MAX, "y-index")?;
        if !m.insert(Edge { x, y }) {
            return Err(syntax(ln, format!("edge {t} listed twice")));
        }
    }
    Ok(m)
}

/// Parses a solution. Edge indices are only range-checked later, against the
/// instance, by `verify_spair`.
pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut result: Option<bool> = None;
    let mut m1: Option<Matching> = None;
    let mut m2: Option<Matching> = None;
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let directive = toks.next().unwrap_or_default();
        match directive {
            "RESULT" => {
                if result.is_some() {
                    return Err(syntax(ln, "duplicate RESULT line"));
                }
                result = Some(match (toks.next(), toks.next()) {
                    (Some("yes"), None) => true,
                    (Some("no"), None) => false,
                    _ => return Err(syntax(ln, "expected `RESULT yes` or `RESULT no`")),
                });
            }
            "M1" | "M2" => {
                match result {
                    None => return Err(syntax(ln, format!("`{directive}` before RESULT line"))),
                    Some(false) => return Err(syntax(ln, "matchings given after `RESULT no`")),
                    Some(true) => {}
                }
                let slot = if directive == "M1" { &mut m1 } else { &mut m2 };
                if slot.is_some() {
                    return Err(syntax(ln, format!("duplicate `{directive}` line")));
                }
                *slot = Some(parse_pairs(toks, ln)?);
            }
            other => return Err(ParseError::UnknownDirective { line: ln, directive: other.to_string() }),
        }
    }
    match result {
        None => Err(ParseError::Missing("RESULT")),
        Some(false) => Ok(Solution::No),
        Some(true) => {
            Ok(Solution::Yes(SPair::new(m1.ok_or(ParseError::Missing("M1"))?, m2.ok_or(ParseError::Missing("M2"))?)))
        }
    }
}

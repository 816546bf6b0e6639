//! Text and JSON encodings for graphs and oriented graphs.
//!
//! The text format is line based. The first significant line is `n <order>`;
//! every following significant line is one edge `u v` (undirected) or one arc
//! `u > v` (oriented). `#` starts a comment running to end of line; blank
//! lines are ignored. A file that mixes edge and arc lines is rejected by
//! both parsers.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, OrientedGraph};
use crate::{Error, Result};

/// JSON form of an undirected graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
}

/// JSON form of an oriented graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrientedGraphJson {
    pub order: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { order: g.order(), edges: g.edges().to_vec() }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        Graph::new(j.order, j.edges.iter().copied())
    }
}

impl From<&OrientedGraph> for OrientedGraphJson {
    fn from(d: &OrientedGraph) -> Self {
        OrientedGraphJson { order: d.order(), arcs: d.arcs().to_vec() }
    }
}

impl TryFrom<&OrientedGraphJson> for OrientedGraph {
    type Error = Error;

    fn try_from(j: &OrientedGraphJson) -> Result<OrientedGraph> {
        OrientedGraph::new(j.order, j.arcs.iter().copied())
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serialization cannot fail")
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s)?;
    Graph::try_from(&j)
}

pub fn oriented_to_json(d: &OrientedGraph) -> String {
    serde_json::to_string(&OrientedGraphJson::from(d)).expect("graph serialization cannot fail")
}

pub fn oriented_from_json(s: &str) -> Result<OrientedGraph> {
    let j: OrientedGraphJson = serde_json::from_str(s)?;
    OrientedGraph::try_from(&j)
}

pub fn graph_to_edgelist(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", u, v));
    }
    s
}

pub fn oriented_to_edgelist(d: &OrientedGraph) -> String {
    let mut s = format!("n {}\n", d.order());
    for &(u, v) in d.arcs() {
        s.push_str(&format!("{} > {}\n", u, v));
    }
    s
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut s = String::from("graph missing {\n");
    for v in 0..g.order() {
        s.push_str(&format!("  v{};\n", v));
    }
    for &(u, v) in g.edges() {
        s.push_str(&format!("  v{} -- v{};\n", u, v));
    }
    s.push_str("}\n");
    s
}

/// Arcs solid, missing pairs dashed and undirected.
pub fn oriented_to_dot(d: &OrientedGraph) -> String {
    let mut s = String::from("digraph oriented {\n");
    for v in 0..d.order() {
        s.push_str(&format!("  v{};\n", v));
    }
    for &(u, v) in d.arcs() {
        s.push_str(&format!("  v{} -> v{};\n", u, v));
    }
    for (u, v) in d.missing_pairs() {
        s.push_str(&format!("  v{} -> v{} [dir=none, style=dashed];\n", u, v));
    }
    s.push_str("}\n");
    s
}

enum Line {
    Order(usize),
    Edge(usize, usize),
    Arc(usize, usize),
}

fn parse_lines(input: &str) -> Result<Vec<(usize, Line)>> {
    let mut out = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parsed = match toks.as_slice() {
            ["n", v] => Line::Order(parse_num(v, lineno)?),
            [u, ">", v] => Line::Arc(parse_num(u, lineno)?, parse_num(v, lineno)?),
            [u, v] => Line::Edge(parse_num(u, lineno)?, parse_num(v, lineno)?),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected 'n <order>', '<u> <v>', or '<u> > <v>', got '{}'",
                    lineno, line
                )))
            }
        };
        out.push((lineno, parsed));
    }
    Ok(out)
}

fn parse_num(tok: &str, lineno: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::Parse(format!("line {}: '{}' is not a vertex number", lineno, tok)))
}

fn parse_header(lines: &[(usize, Line)]) -> Result<usize> {
    match lines.first() {
        Some(&(_, Line::Order(n))) => Ok(n),
        Some(&(lineno, _)) => Err(Error::Parse(format!(
            "line {}: the first significant line must be the header 'n <order>'",
            lineno
        ))),
        None => Err(Error::Parse("empty input: missing header 'n <order>'".into())),
    }
}

pub fn graph_from_edgelist(input: &str) -> Result<Graph> {
    let lines = parse_lines(input)?;
    let n = parse_header(&lines)?;
    let mut edges = Vec::new();
    for &(lineno, ref line) in &lines[1..] {
        match *line {
            Line::Edge(u, v) => edges.push((u, v)),
            Line::Arc(..) => {
                return Err(Error::Parse(format!(
                    "line {}: arc line in an undirected edge list",
                    lineno
                )))
            }
            Line::Order(_) => {
                return Err(Error::Parse(format!("line {}: repeated header", lineno)))
            }
        }
    }
    Graph::new(n, edges)
}

pub fn oriented_from_edgelist(input: &str) -> Result<OrientedGraph> {
    let lines = parse_lines(input)?;
    let n = parse_header(&lines)?;
    let mut arcs = Vec::new();
    for &(lineno, ref line) in &lines[1..] {
        match *line {
            Line::Arc(u, v) => arcs.push((u, v)),
            Line::Edge(u, v) => {
                return Err(Error::Parse(format!(
                    "line {}: undirected edge {} {} in an oriented arc list; write '{} > {}'",
                    lineno, u, v, u, v
                )))
            }
            Line::Order(_) => {
                return Err(Error::Parse(format!("line {}: repeated header", lineno)))
            }
        }
    }
    OrientedGraph::new(n, arcs)
}

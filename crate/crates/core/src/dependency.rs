//! Missing edges, the losing relation between them, the dependency digraph,
//! good missing edges, and convenient orientations.
//!
//! For an oriented graph `D`, a missing edge is a non-adjacent vertex pair.
//! Missing edge `x1y1` loses to missing edge `x2y2` when, for some labeling
//! of the endpoints, `x1 -> x2` with `y2` outside the first and second
//! out-neighborhoods of `x1`, and `y1 -> y2` with `x2` outside the first and
//! second out-neighborhoods of `y1`. The dependency digraph has the missing
//! edges as nodes and an arc for every losing pair; unlike the underlying
//! oriented graph it may contain digons.

use serde::{Deserialize, Serialize};

use crate::graph::{bit, BitIter, Graph, OrientedGraph};
use crate::{Error, Result};

/// A missing edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MissingEdge {
    pub u: usize,
    pub v: usize,
}

impl MissingEdge {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            MissingEdge { u: a, v: b }
        } else {
            MissingEdge { u: b, v: a }
        }
    }

    pub fn contains(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

/// The endpoint labeling under which one missing edge loses to another:
/// `x1 -> x2` and `y1 -> y2` with the second-neighborhood exclusions.
/// `{x1, y1}` is the losing edge, `{x2, y2}` the winning one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LosingLabel {
    pub x1: usize,
    pub y1: usize,
    pub x2: usize,
    pub y2: usize,
}

/// Vertices adjacent to every other vertex, ascending.
pub fn whole_vertices(d: &OrientedGraph) -> Vec<usize> {
    (0..d.order()).filter(|&v| d.is_whole(v)).collect()
}

/// The missing graph of `d`: vertices are the non-whole vertices, edges are
/// the missing edges. Returns the graph in compact labels together with the
/// map from compact labels back to vertices of `d`.
pub fn missing_graph(d: &OrientedGraph) -> (Graph, Vec<usize>) {
    let map: Vec<usize> = (0..d.order()).filter(|&v| !d.is_whole(v)).collect();
    let mut index = vec![usize::MAX; d.order()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(usize, usize)> = d
        .missing_pairs()
        .into_iter()
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    let g = Graph::new(map.len(), edges).expect("missing pairs of non-whole vertices are valid");
    (g, map)
}

/// Check one fixed labeling of the losing condition.
fn loses_with(d: &OrientedGraph, x1: usize, y1: usize, x2: usize, y2: usize) -> bool {
    d.has_arc(x1, x2)
        && (d.out_mask(x1) | d.second_out_mask(x1)) & bit(y2) == 0
        && d.has_arc(y1, y2)
        && (d.out_mask(y1) | d.second_out_mask(y1)) & bit(x2) == 0
}

/// If `e1` loses to `e2`, return the witnessing labeling, trying the two
/// essentially different endpoint pairings in canonical order: with
/// `e1 = (a, b)` and `e2 = (c, d)` in sorted form, first `(a, b, c, d)`,
/// then `(a, b, d, c)`.
pub fn loses_to(d: &OrientedGraph, e1: MissingEdge, e2: MissingEdge) -> Option<LosingLabel> {
    let (a, b) = (e1.u, e1.v);
    let (c, dd) = (e2.u, e2.v);
    if loses_with(d, a, b, c, dd) {
        return Some(LosingLabel { x1: a, y1: b, x2: c, y2: dd });
    }
    if loses_with(d, a, b, dd, c) {
        return Some(LosingLabel { x1: a, y1: b, x2: dd, y2: c });
    }
    None
}

/// The dependency digraph of `d`: one node per missing edge, one labeled arc
/// for every losing pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyDigraph {
    /// Missing edges, sorted.
    pub nodes: Vec<MissingEdge>,
    /// Arcs as `(from, to)` node indices, sorted; `from` loses to `to`.
    pub arcs: Vec<(usize, usize)>,
    /// Witnessing labeling for each arc, parallel to `arcs`.
    pub labels: Vec<LosingLabel>,
}

impl DependencyDigraph {
    pub fn node_index(&self, e: MissingEdge) -> Option<usize> {
        self.nodes.binary_search(&e).ok()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.arcs.iter().filter(|&&(f, _)| f == node).count()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.arcs.iter().filter(|&&(_, t)| t == node).count()
    }

    pub fn out_arcs(&self, node: usize) -> Vec<usize> {
        self.arcs.iter().filter(|&&(f, _)| f == node).map(|&(_, t)| t).collect()
    }

    pub fn in_arcs(&self, node: usize) -> Vec<usize> {
        self.arcs.iter().filter(|&&(_, t)| t == node).map(|&(f, _)| f).collect()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.binary_search(&(from, to)).is_ok()
    }
}

/// Build the dependency digraph of `d`.
pub fn dependency_digraph(d: &OrientedGraph) -> DependencyDigraph {
    let nodes: Vec<MissingEdge> = d
        .missing_pairs()
        .into_iter()
        .map(|(u, v)| MissingEdge::new(u, v))
        .collect();
    let mut arcs = Vec::new();
    let mut labels = Vec::new();
    for (i, &e1) in nodes.iter().enumerate() {
        for (j, &e2) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(label) = loses_to(d, e1, e2) {
                arcs.push((i, j));
                labels.push(label);
            }
        }
    }
    DependencyDigraph { nodes, arcs, labels }
}

/// Whether every in-neighbor of `a` already reaches `b` in one or two
/// steps. Orienting the missing edge `ab` as `(a, b)` then gives no vertex
/// a new second out-neighbor through `a`.
fn orientation_is_convenient(d: &OrientedGraph, a: usize, b: usize) -> bool {
    BitIter(d.in_mask(a) & !bit(b))
        .all(|v| (d.out_mask(v) | d.second_out_mask(v)) & bit(b) != 0)
}

/// Directions of a missing edge whose addition gives no vertex a new second
/// out-neighbor through the head endpoint; zero, one, or both directions
/// may qualify, each tested literally by its quantified clause.
pub fn convenient_orientations(d: &OrientedGraph, e: MissingEdge) -> Result<Vec<(usize, usize)>> {
    if d.is_adjacent(e.u, e.v) {
        return Err(Error::NotMissingEdge { u: e.u, v: e.v });
    }
    let mut out = Vec::new();
    if orientation_is_convenient(d, e.u, e.v) {
        out.push((e.u, e.v));
    }
    if orientation_is_convenient(d, e.v, e.u) {
        out.push((e.v, e.u));
    }
    Ok(out)
}

/// Whether a missing edge is good: it admits a convenient orientation, or
/// equivalently nothing loses to it. Both routes are evaluated and their
/// agreement asserted on every call.
pub fn is_good(d: &OrientedGraph, delta: &DependencyDigraph, e: MissingEdge) -> Result<bool> {
    let node = delta
        .node_index(e)
        .ok_or(Error::NotMissingEdge { u: e.u, v: e.v })?;
    let by_delta = delta.in_degree(node) == 0;
    let by_definition = !convenient_orientations(d, e)?.is_empty();
    if by_delta != by_definition {
        return Err(Error::Inconsistency(format!(
            "goodness of missing edge {:?} disagrees between the dependency digraph ({}) and the orientation clauses ({})",
            e, by_delta, by_definition
        )));
    }
    Ok(by_delta)
}

/// Diagnosis of why a dependency digraph fails to be a disjoint union of
/// directed paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathShapeDefect {
    /// Nodes `a` and `b` lose to each other.
    Digon { a: usize, b: usize },
    /// Node with two or more out-arcs.
    OutBranching { node: usize, targets: Vec<usize> },
    /// Node with two or more in-arcs.
    InBranching { node: usize, sources: Vec<usize> },
    /// Directed cycle through the listed nodes.
    Cycle { nodes: Vec<usize> },
}

/// Check that the dependency digraph is a disjoint union of directed paths
/// (isolated nodes count as length-zero paths). Returns the first defect
/// found, scanning digons, then out-branchings, then in-branchings, then
/// cycles, each in node order.
pub fn delta_path_defect(delta: &DependencyDigraph) -> Option<PathShapeDefect> {
    let n = delta.nodes.len();
    for a in 0..n {
        for b in a + 1..n {
            if delta.has_arc(a, b) && delta.has_arc(b, a) {
                return Some(PathShapeDefect::Digon { a, b });
            }
        }
    }
    for v in 0..n {
        let targets = delta.out_arcs(v);
        if targets.len() > 1 {
            return Some(PathShapeDefect::OutBranching { node: v, targets });
        }
    }
    for v in 0..n {
        let sources = delta.in_arcs(v);
        if sources.len() > 1 {
            return Some(PathShapeDefect::InBranching { node: v, sources });
        }
    }
    // With all degrees at most one, any remaining defect is a cycle; every
    // node on a cycle has both degrees exactly one and never reaches a
    // degree-zero endpoint.
    let mut on_path = vec![false; n];
    for start in 0..n {
        if delta.in_arcs(start).is_empty() {
            let mut v = start;
            on_path[v] = true;
            while let Some(&next) = delta.out_arcs(v).first() {
                v = next;
                on_path[v] = true;
            }
        }
    }
    for v in 0..n {
        if !on_path[v] {
            let mut cycle = vec![v];
            let mut w = delta.out_arcs(v)[0];
            while w != v {
                cycle.push(w);
                w = delta.out_arcs(w)[0];
            }
            return Some(PathShapeDefect::Cycle { nodes: cycle });
        }
    }
    None
}

/// Whether the dependency digraph is a disjoint union of directed paths.
pub fn delta_is_disjoint_paths(delta: &DependencyDigraph) -> bool {
    delta_path_defect(delta).is_none()
}

/// The maximal directed paths of a path-shaped dependency digraph, as node
/// index sequences from head to tail, sorted by head node. Isolated nodes
/// appear as one-element paths.
pub fn maximal_delta_paths(delta: &DependencyDigraph) -> Result<Vec<Vec<usize>>> {
    if let Some(defect) = delta_path_defect(delta) {
        return Err(Error::Inconsistency(format!(
            "dependency digraph is not a disjoint union of paths: {:?}",
            defect
        )));
    }
    let mut paths = Vec::new();
    for start in 0..delta.nodes.len() {
        if delta.in_arcs(start).is_empty() {
            let mut path = vec![start];
            let mut v = start;
            while let Some(&next) = delta.out_arcs(v).first() {
                path.push(next);
                v = next;
            }
            paths.push(path);
        }
    }
    Ok(paths)
}

/// JSON form of a dependency digraph: nodes as vertex pairs, arcs as node
/// index pairs with their witnessing labelings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DependencyDigraphJson {
    pub nodes: Vec<(usize, usize)>,
    pub arcs: Vec<DependencyArcJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DependencyArcJson {
    pub from: usize,
    pub to: usize,
    pub label: LosingLabel,
}

impl From<&DependencyDigraph> for DependencyDigraphJson {
    fn from(delta: &DependencyDigraph) -> Self {
        DependencyDigraphJson {
            nodes: delta.nodes.iter().map(|e| (e.u, e.v)).collect(),
            arcs: delta
                .arcs
                .iter()
                .zip(&delta.labels)
                .map(|(&(from, to), &label)| DependencyArcJson { from, to, label })
                .collect(),
        }
    }
}

pub fn delta_to_json(delta: &DependencyDigraph) -> String {
    serde_json::to_string_pretty(&DependencyDigraphJson::from(delta))
        .expect("dependency digraph serialization cannot fail")
}

/// DOT rendering of the oriented graph and its dependency digraph as two
/// clusters: solid directed edges for arcs of `d`, dashed edges for missing
/// edges, and one box node per missing edge with the losing arcs between
/// them, labeled by their witnessing labelings.
pub fn delta_to_dot(d: &OrientedGraph, delta: &DependencyDigraph) -> String {
    let mut out = String::from("digraph dependency {\n  rankdir=LR;\n");
    out.push_str("  subgraph cluster_oriented {\n    label=\"oriented graph\";\n");
    for v in 0..d.order() {
        out.push_str(&format!("    v{};\n", v));
    }
    for &(u, v) in d.arcs() {
        out.push_str(&format!("    v{} -> v{};\n", u, v));
    }
    for e in &delta.nodes {
        out.push_str(&format!(
            "    v{} -> v{} [dir=none, style=dashed];\n",
            e.u, e.v
        ));
    }
    out.push_str("  }\n  subgraph cluster_delta {\n    label=\"dependency digraph\";\n");
    for (i, e) in delta.nodes.iter().enumerate() {
        out.push_str(&format!("    m{} [label=\"{}-{}\", shape=box];\n", i, e.u, e.v));
    }
    for (&(from, to), label) in delta.arcs.iter().zip(&delta.labels) {
        out.push_str(&format!(
            "    m{} -> m{} [label=\"{}>{} {}>{}\"];\n",
            from, to, label.x1, label.x2, label.y1, label.y2
        ));
    }
    out.push_str("  }\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_graph_drops_whole_vertices() {
        // Tournament on 0,1,2 plus vertex 3 adjacent only to 0.
        let d = OrientedGraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert_eq!(whole_vertices(&d), vec![0]);
        let (g, map) = missing_graph(&d);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }
}

//! Undirected graphs and oriented graphs on at most 64 vertices.
//!
//! Both types store per-vertex adjacency as `u64` bitmasks alongside a sorted
//! explicit edge (or arc) list. Oriented graphs forbid loops and digons: for
//! any pair `{u, v}` at most one of the arcs `u->v`, `v->u` exists.

use crate::{Error, Result};

/// Iterator over the set bits of a `u64`, ascending.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Bitmask with exactly the single bit `v` set.
#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Bitmask with bits `0..n` set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Collect the set bits of a mask into a sorted vector.
pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    BitIter(mask).collect()
}

/// Build a mask from vertex indices. Duplicates are rejected.
pub fn vec_to_mask(vertices: &[usize], order: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &v in vertices {
        if v >= order {
            return Err(Error::VertexOutOfRange { vertex: v, order });
        }
        if mask & bit(v) != 0 {
            return Err(Error::DuplicateVertex { vertex: v });
        }
        mask |= bit(v);
    }
    Ok(mask)
}

fn check_order(n: usize) -> Result<()> {
    if n > 64 {
        return Err(Error::OrderTooLarge { order: n });
    }
    Ok(())
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, order: n });
    }
    Ok(())
}

/// Finite simple undirected graph on vertices `0..order`, order at most 64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub const MAX_ORDER: usize = 64;

    /// Build a graph from an edge list. Edges may be given in either
    /// endpoint order; loops and duplicates are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            check_vertex(a, n)?;
            check_vertex(b, n)?;
            if a == b {
                return Err(Error::LoopEdge { vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u] & bit(v) != 0 {
                return Err(Error::DuplicateEdge { u, v });
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
            norm.push((u, v));
        }
        norm.sort_unstable();
        Ok(Graph { n, adj, edges: norm })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Complete graph.
    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && u != v && self.adj[u] & bit(v) != 0
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// All vertices as a bitmask.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Non-adjacent unordered pairs, sorted, `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] & bit(v) == 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree zero, ascending.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] & bit(v) == 0 {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a valid graph is valid")
    }

    /// Induced subgraph on the given vertices together with the map from new
    /// vertex ids to original ids (`map[i]` is the original id of new vertex
    /// `i`). Vertices are deduplicated and sorted, so the map is ascending.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mask = vec_to_mask(vertices, self.n)?;
        Ok(self.induced_mask(mask))
    }

    /// Induced subgraph on the vertices of `mask`.
    pub fn induced_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let map = mask_to_vec(mask & self.vertex_mask());
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.adj[u] & bit(v) != 0 {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(map.len(), edges).expect("induced subgraph of a valid graph is valid");
        (g, map)
    }

    /// Edges with one endpoint in `us` and the other in `ws`, sorted. The two
    /// sets must be disjoint subsets of the vertices.
    pub fn edges_between(&self, us: &[usize], ws: &[usize]) -> Result<Vec<(usize, usize)>> {
        let um = vec_to_mask(us, self.n)?;
        let wm = vec_to_mask(ws, self.n)?;
        if um & wm != 0 {
            return Err(Error::DuplicateVertex { vertex: mask_to_vec(um & wm)[0] });
        }
        let mut out: Vec<(usize, usize)> = BitIter(um)
            .flat_map(|u| BitIter(self.adj[u] & wm).map(move |w| if u < w { (u, w) } else { (w, u) }))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Whether the vertices of `mask` are pairwise adjacent.
    pub fn is_clique_mask(&self, mask: u64) -> bool {
        BitIter(mask).all(|v| mask & !self.adj[v] & !bit(v) == 0)
    }

    /// Whether the vertices of `mask` are pairwise non-adjacent.
    pub fn is_stable_mask(&self, mask: u64) -> bool {
        BitIter(mask).all(|v| mask & self.adj[v] == 0)
    }

    /// Graph with the given edges removed. Each edge must be present.
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Result<Graph> {
        let mut keep: Vec<(usize, usize)> = self.edges.clone();
        for &(a, b) in remove {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            let before = keep.len();
            keep.retain(|&e| e != (u, v));
            if keep.len() == before {
                return Err(Error::NotMissingEdge { u, v });
            }
        }
        Graph::new(self.n, keep)
    }
}

/// Oriented graph: a loopless digraph on vertices `0..order` (order at most
/// 64) in which every unordered pair carries at most one arc.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    arcs: Vec<(usize, usize)>,
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n, self.arcs)
    }
}

impl OrientedGraph {
    pub const MAX_ORDER: usize = 64;

    /// Build an oriented graph from an arc list `(tail, head)`. Loops,
    /// duplicate arcs, and digons are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_order(n)?;
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::LoopEdge { vertex: u });
            }
            if out[u] & bit(v) != 0 {
                return Err(Error::DuplicateArc { u, v });
            }
            if out[v] & bit(u) != 0 {
                return Err(Error::Digon { u: v, v: u });
            }
            out[u] |= bit(v);
            inn[v] |= bit(u);
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(OrientedGraph { n, out, inn, arcs: list })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Transitive tournament: arc `u->v` whenever `u < v`.
    pub fn transitive_tournament(n: usize) -> Result<Self> {
        check_order(n)?;
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                arcs.push((u, v));
            }
        }
        Self::new(n, arcs)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Arcs as sorted `(tail, head)` pairs.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u] & bit(v) != 0
    }

    /// Whether `u` and `v` are joined by an arc in either direction.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-neighborhood of `v` as a bitmask.
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// In-neighborhood of `v` as a bitmask.
    pub fn in_mask(&self, v: usize) -> u64 {
        self.inn[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.inn[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    /// Second out-neighborhood of `v`: vertices outside the out-neighborhood
    /// of `v` that receive an arc from some out-neighbor of `v`.
    pub fn second_out_mask(&self, v: usize) -> u64 {
        let mut reach = 0u64;
        for y in BitIter(self.out[v]) {
            reach |= self.out[y];
        }
        let second = reach & !self.out[v];
        // v itself can only appear via an arc back from an out-neighbor,
        // which would be a digon.
        debug_assert_eq!(second & bit(v), 0);
        second
    }

    pub fn second_out_neighbors(&self, v: usize) -> Vec<usize> {
        mask_to_vec(self.second_out_mask(v))
    }

    /// Whether `v` has the second-neighborhood property: its second
    /// out-neighborhood is at least as large as its first.
    pub fn has_snp(&self, v: usize) -> bool {
        self.second_out_mask(v).count_ones() >= self.out[v].count_ones()
    }

    /// Non-adjacent unordered pairs, sorted, `u < v`.
    pub fn missing_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if (self.out[u] | self.inn[u]) & bit(v) == 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Whether `v` is adjacent to every other vertex.
    pub fn is_whole(&self, v: usize) -> bool {
        (self.out[v] | self.inn[v]) == full_mask(self.n) & !bit(v)
    }

    pub fn is_tournament(&self) -> bool {
        self.arcs.len() == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Underlying undirected graph: edge `{u, v}` whenever some arc joins
    /// `u` and `v`.
    pub fn underlying_graph(&self) -> Graph {
        let edges = self.arcs.iter().map(|&(u, v)| (u, v));
        Graph::new(self.n, edges).expect("underlying graph of a valid oriented graph is valid")
    }

    /// This graph plus the given arcs. Digons and duplicates are rejected,
    /// including against existing arcs.
    pub fn with_arcs(&self, extra: &[(usize, usize)]) -> Result<OrientedGraph> {
        let arcs = self.arcs.iter().copied().chain(extra.iter().copied());
        OrientedGraph::new(self.n, arcs)
    }

    /// This graph with the arc `u->v` replaced by `v->u`.
    pub fn reverse_arc(&self, u: usize, v: usize) -> Result<OrientedGraph> {
        if !self.has_arc(u, v) {
            return Err(Error::NoSuchArc { u, v });
        }
        let arcs = self
            .arcs
            .iter()
            .map(|&(a, b)| if (a, b) == (u, v) { (v, u) } else { (a, b) });
        OrientedGraph::new(self.n, arcs)
    }

    /// Induced subdigraph on the given vertices with the new-to-original
    /// vertex map, as in [`Graph::induced`].
    pub fn induced(&self, vertices: &[usize]) -> Result<(OrientedGraph, Vec<usize>)> {
        let mask = vec_to_mask(vertices, self.n)?;
        let map = mask_to_vec(mask);
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter(|&&(u, v)| mask & bit(u) != 0 && mask & bit(v) != 0)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        let d = OrientedGraph::new(map.len(), arcs)
            .expect("induced subdigraph of a valid oriented graph is valid");
        Ok((d, map))
    }
}

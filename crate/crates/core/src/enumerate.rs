//! Canonical enumeration of unlabeled graphs of small order.
//!
//! The canonical code of a graph is the minimum upper-triangle adjacency
//! bitcode over all vertex orderings that respect the stable coloring
//! obtained by iterated degree refinement. The coloring is
//! isomorphism-invariant, so two graphs share a code exactly when they are
//! isomorphic.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::{Error, Result};

/// Number of upper-triangle bit positions for order `n`.
fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Stable vertex coloring by iterated refinement: start from degrees, then
/// repeatedly replace each vertex's color by the rank of
/// `(color, sorted colors of neighbors)` until the partition stops changing.
fn stable_coloring(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
            nb.sort_unstable();
            sigs.push((color[v], nb));
        }
        let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = (0..n)
            .map(|v| sorted.binary_search(&&sigs[v]).expect("signature present"))
            .collect();
        if next == color {
            return color;
        }
        color = next;
    }
}

fn code_of_order(g: &Graph, place: &[usize]) -> u128 {
    let n = place.len();
    let mut code = 0u128;
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(place[i], place[j]) {
                code |= 1u128 << pos;
            }
            pos += 1;
        }
    }
    code
}

fn min_code_rec(g: &Graph, classes: &[Vec<usize>], ci: usize, place: &mut Vec<usize>, best: &mut Option<u128>) {
    if ci == classes.len() {
        let code = code_of_order(g, place);
        if best.map_or(true, |b| code < b) {
            *best = Some(code);
        }
        return;
    }
    let mut class = classes[ci].clone();
    permute_class(g, classes, ci, &mut class, 0, place, best);
}

fn permute_class(
    g: &Graph,
    classes: &[Vec<usize>],
    ci: usize,
    class: &mut Vec<usize>,
    k: usize,
    place: &mut Vec<usize>,
    best: &mut Option<u128>,
) {
    if k == class.len() {
        min_code_rec(g, classes, ci + 1, place, best);
        return;
    }
    for i in k..class.len() {
        class.swap(k, i);
        place.push(class[k]);
        permute_class(g, classes, ci, class, k + 1, place, best);
        place.pop();
        class.swap(k, i);
    }
}

/// Canonical code of `g`. Worst-case cost is factorial in the largest color
/// class, so this is intended for small orders; orders above 16 are
/// rejected because the code would not fit 120 bits.
pub fn canonical_code(g: &Graph) -> Result<u128> {
    let n = g.order();
    if n > 16 {
        return Err(Error::OrderCapExceeded { order: n, cap: 16 });
    }
    let color = stable_coloring(g);
    let classes_count = color.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); classes_count];
    for v in 0..n {
        classes[color[v]].push(v);
    }
    let mut best = None;
    let mut place = Vec::with_capacity(n);
    min_code_rec(g, &classes, 0, &mut place, &mut best);
    Ok(best.unwrap_or(0))
}

/// Rebuild the graph of order `n` whose upper-triangle bitcode is `code`.
pub fn graph_from_code(n: usize, code: u128) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> pos & 1 != 0 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::new(n, edges)
}

/// All unlabeled graphs of order `n`, one canonical representative each,
/// sorted by canonical code. Generated by extending every graph of order
/// `n - 1` with one new vertex over all attachment subsets.
pub fn canonical_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 10 {
        return Err(Error::OrderCapExceeded { order: n, cap: 10 });
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    let mut current: Vec<u128> = vec![0];
    for k in 1..=n {
        let mut seen: HashSet<u128> = HashSet::new();
        for &code in &current {
            let base = graph_from_code(k - 1, code)?;
            let base_edges: Vec<(usize, usize)> = base.edges().to_vec();
            for attach in 0u64..(1u64 << (k - 1)) {
                let mut edges = base_edges.clone();
                for v in 0..k - 1 {
                    if attach >> v & 1 != 0 {
                        edges.push((v, k - 1));
                    }
                }
                let h = Graph::new(k, edges)?;
                seen.insert(canonical_code(&h)?);
            }
        }
        let mut next: Vec<u128> = seen.into_iter().collect();
        next.sort_unstable();
        current = next;
    }
    debug_assert_eq!(pair_count(n) <= 128, true);
    current.into_iter().map(|c| graph_from_code(n, c)).collect()
}

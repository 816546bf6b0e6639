//! Instance generators: class members built from block-size specifications,
//! streams of oriented graphs realizing a prescribed missing graph, and the
//! fixed digraphs whose dependency digraphs branch.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dependency::missing_graph;
use crate::graph::{Graph, OrientedGraph};
use crate::recognition::{
    is_generalized_comb, is_target_free, is_threshold, validate_comb_decomposition,
    validate_target_decomposition, CombDecomposition, TargetDecomposition,
};
use crate::{Error, Result};

/// Exhaustive orientation streams refuse more orientable pairs than this.
pub const ORIENTATION_PAIR_CAP_DEFAULT: usize = 24;

/// Block sizes of a layered split graph: `a[i]` is the size of the stable
/// layer `A_i` (layer 0 is isolated and may be empty) and `x[i]` the size of
/// the clique layer `X_{i+1}` (the last may be empty). Layer `A_i` is joined
/// to `X_1..X_i` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub a: Vec<usize>,
    pub x: Vec<usize>,
}

impl ThresholdSpec {
    pub fn order(&self) -> usize {
        self.a.iter().chain(self.x.iter()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n1 = self.a.len();
        if n1 == 0 || self.x.len() != n1 {
            return Err(Error::InvalidSpec(format!(
                "need equally many stable and clique layers, got {} and {}",
                n1,
                self.x.len()
            )));
        }
        for (i, &s) in self.a.iter().enumerate().skip(1) {
            if s == 0 {
                return Err(Error::InvalidSpec(format!("stable layer {} must be nonempty", i)));
            }
        }
        for (i, &s) in self.x.iter().enumerate() {
            if s == 0 && i + 1 < n1 {
                return Err(Error::InvalidSpec(format!(
                    "clique layer {} must be nonempty",
                    i + 1
                )));
            }
        }
        if self.order() == 0 {
            return Err(Error::InvalidSpec("graph would have no vertices".into()));
        }
        Ok(())
    }
}

/// Block sizes of a generalized comb. `a` and `x` are as in
/// [`ThresholdSpec`]; `m[i]` is the size of the stable block `M_{i+1}` and
/// `y[j]` the size of the clique block `Y_{j+2}`. The clique block `Y_1` is
/// `X_1` itself and is not listed. With `attach_c5` the generated graph gets
/// a five-cycle joined completely to the clique side and not at all to the
/// stable side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombSpec {
    pub a: Vec<usize>,
    #[serde(default)]
    pub m: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    #[serde(default)]
    pub attach_c5: bool,
}

impl CombSpec {
    /// Number of comb vertices, the five-cycle excluded.
    pub fn comb_order(&self) -> usize {
        self.a.iter().chain(self.m.iter()).chain(self.x.iter()).chain(self.y.iter()).sum()
    }

    pub fn order(&self) -> usize {
        self.comb_order() + if self.attach_c5 { 5 } else { 0 }
    }

    pub fn validate(&self) -> Result<()> {
        let n1 = self.a.len();
        let l = self.m.len();
        if n1 == 0 || self.x.len() != n1 {
            return Err(Error::InvalidSpec(format!(
                "need equally many stable and clique layers, got {} and {}",
                n1,
                self.x.len()
            )));
        }
        if self.y.len() != l + 1 {
            return Err(Error::InvalidSpec(format!(
                "need one more trailing clique block than matched stable blocks, got {} and {}",
                self.y.len(),
                l
            )));
        }
        for (i, &s) in self.a.iter().enumerate().skip(1) {
            if s == 0 {
                return Err(Error::InvalidSpec(format!("stable layer {} must be nonempty", i)));
            }
        }
        for (i, &s) in self.x.iter().enumerate() {
            if s == 0 && i + 1 < n1 {
                return Err(Error::InvalidSpec(format!(
                    "clique layer {} must be nonempty",
                    i + 1
                )));
            }
        }
        for (i, &s) in self.m.iter().enumerate() {
            if s == 0 {
                return Err(Error::InvalidSpec(format!(
                    "matched stable block {} must be nonempty",
                    i + 1
                )));
            }
        }
        // Matched blocks pair off with equally sized clique blocks; the
        // first pairs with the aliased first clique layer.
        if l >= 1 && self.x[0] != self.m[0] {
            return Err(Error::InvalidSpec(format!(
                "first clique layer has size {} but its matched block has size {}",
                self.x[0], self.m[0]
            )));
        }
        for j in 0..l.saturating_sub(1) {
            if self.y[j] != self.m[j + 1] {
                return Err(Error::InvalidSpec(format!(
                    "trailing clique block {} has size {} but its matched block has size {}",
                    j + 2,
                    self.y[j],
                    self.m[j + 1]
                )));
            }
        }
        Ok(())
    }
}

fn block_ranges(sizes: &[usize], start: &mut usize) -> Vec<Vec<usize>> {
    sizes
        .iter()
        .map(|&s| {
            let block: Vec<usize> = (*start..*start + s).collect();
            *start += s;
            block
        })
        .collect()
}

/// Build the layered split graph of a spec: stable layers first, then
/// clique layers, consecutively numbered. Acceptance by the recognizer is
/// asserted before returning.
pub fn gen_threshold(spec: &ThresholdSpec) -> Result<Graph> {
    spec.validate()?;
    let mut start = 0;
    let a = block_ranges(&spec.a, &mut start);
    let x = block_ranges(&spec.x, &mut start);
    let mut edges = BTreeSet::new();
    let k: Vec<usize> = x.iter().flatten().copied().collect();
    for (i, &u) in k.iter().enumerate() {
        for &v in &k[i + 1..] {
            edges.insert((u, v));
        }
    }
    for (i, block) in a.iter().enumerate().skip(1) {
        for &u in block {
            for xb in &x[..i] {
                for &v in xb {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
    }
    let g = Graph::new(start, edges)?;
    if !is_threshold(&g)?.is_accept() {
        return Err(Error::Inconsistency(
            "generated layered split graph rejected by its recognizer".into(),
        ));
    }
    Ok(g)
}

struct CombParts {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
    decomposition: CombDecomposition,
}

fn build_comb(spec: &CombSpec, perms: Option<&[Vec<usize>]>) -> Result<CombParts> {
    spec.validate()?;
    let l = spec.m.len();
    let mut start = 0;
    let a = block_ranges(&spec.a, &mut start);
    let m = block_ranges(&spec.m, &mut start);
    let x = block_ranges(&spec.x, &mut start);
    let y_tail = block_ranges(&spec.y, &mut start);
    // Full clique-block list: the aliased first layer, then the tail.
    let mut y = vec![x[0].clone()];
    y.extend(y_tail.iter().cloned());
    let mut edges = BTreeSet::new();
    let mut add = |u: usize, v: usize| {
        edges.insert((u.min(v), u.max(v)));
    };
    let k: Vec<usize> = x.iter().chain(y_tail.iter()).flatten().copied().collect();
    for (i, &u) in k.iter().enumerate() {
        for &v in &k[i + 1..] {
            add(u, v);
        }
    }
    for (i, block) in a.iter().enumerate().skip(1) {
        for &u in block {
            for xb in &x[..i] {
                for &v in xb {
                    add(u, v);
                }
            }
            for yb in &y {
                for &v in yb {
                    add(u, v);
                }
            }
        }
    }
    let mut matching = Vec::new();
    for i in 0..l {
        let perm: Vec<usize> = match perms.and_then(|p| p.get(i)) {
            Some(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != (0..spec.m[i]).collect::<Vec<_>>() {
                    return Err(Error::InvalidSpec(format!(
                        "matching permutation {} is not a permutation of 0..{}",
                        i, spec.m[i]
                    )));
                }
                p.clone()
            }
            None => (0..spec.m[i]).collect(),
        };
        for (j, &mv) in m[i].iter().enumerate() {
            let yv = y[i][perm[j]];
            add(mv, yv);
            matching.push((yv, mv));
        }
        for yb in &y[i + 1..=l] {
            for &mv in &m[i] {
                for &yv in yb {
                    add(mv, yv);
                }
            }
        }
    }
    matching.sort_unstable();
    let decomposition = CombDecomposition { a, m, x, y, matching };
    Ok(CombParts { order: start, edges, decomposition })
}

/// Build the generalized comb of a spec: stable layers, matched stable
/// blocks, clique layers, trailing clique blocks, consecutively numbered.
/// Matched pairs are laid down index-aligned. Acceptance by the recognizer
/// and clause-by-clause validity of the returned decomposition are asserted.
pub fn gen_generalized_comb(spec: &CombSpec) -> Result<(Graph, CombDecomposition)> {
    gen_generalized_comb_with_matching(spec, None)
}

/// As [`gen_generalized_comb`], but block `i`'s matching pairs its `j`-th
/// stable vertex with the `perms[i][j]`-th clique vertex.
pub fn gen_generalized_comb_with_matching(
    spec: &CombSpec,
    perms: Option<&[Vec<usize>]>,
) -> Result<(Graph, CombDecomposition)> {
    if spec.comb_order() == 0 {
        return Err(Error::InvalidSpec("graph would have no vertices".into()));
    }
    let parts = build_comb(spec, perms)?;
    let g = Graph::new(parts.order, parts.edges)?;
    validate_comb_decomposition(&g, &parts.decomposition)?;
    if !is_generalized_comb(&g)?.is_accept() {
        return Err(Error::Inconsistency(
            "generated comb rejected by its recognizer".into(),
        ));
    }
    Ok((g, parts.decomposition))
}

/// Build the comb of a spec and, if flagged, attach a five-cycle joined
/// completely to the clique side and not at all to the stable side as the
/// last five vertices. Acceptance by the recognizer and validity of the
/// returned decomposition are asserted.
pub fn gen_target_graph(spec: &CombSpec) -> Result<(Graph, TargetDecomposition)> {
    if spec.order() == 0 {
        return Err(Error::InvalidSpec("graph would have no vertices".into()));
    }
    let parts = build_comb(spec, None)?;
    let mut edges = parts.edges;
    let mut c = Vec::new();
    if spec.attach_c5 {
        let base = parts.order;
        c = (base..base + 5).collect();
        for i in 0..5 {
            edges.insert((c[i].min(c[(i + 1) % 5]), c[i].max(c[(i + 1) % 5])));
        }
        let k: Vec<usize> = parts
            .decomposition
            .x
            .iter()
            .chain(parts.decomposition.y.iter().skip(1))
            .flatten()
            .copied()
            .collect();
        for &cv in &c {
            for &kv in &k {
                edges.insert((kv.min(cv), kv.max(cv)));
            }
        }
    }
    let order = parts.order + c.len();
    let g = Graph::new(order, edges)?;
    let t = TargetDecomposition { comb: parts.decomposition, c };
    validate_target_decomposition(&g, &t)?;
    if !is_target_free(&g)?.is_accept() {
        return Err(Error::Inconsistency(
            "generated graph rejected by its recognizer".into(),
        ));
    }
    Ok((g, t))
}

/// How to realize orientations over the orientable pairs.
#[derive(Clone, Debug)]
pub enum OrientationMode {
    /// All `2^p` assignments, in ascending code order. With `include_extra`
    /// the pairs touching extra vertices join the product; otherwise they
    /// take a fixed alternating direction.
    Exhaustive { include_extra: bool },
    /// `samples` independent uniform assignments from a seeded generator.
    Random { samples: usize, seed: u64 },
}

enum StreamState {
    Exhaustive { next: u64, end: u64 },
    Random { rng: Box<ChaCha8Rng>, left: usize },
}

/// A stream of oriented graphs whose missing graph is exactly the prescribed
/// one; the round trip is asserted on every emitted instance.
pub struct OrientationStream {
    order: usize,
    expect: Graph,
    fixed: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    state: StreamState,
}

impl OrientationStream {
    /// Number of instances the stream will emit.
    pub fn len(&self) -> u64 {
        match &self.state {
            StreamState::Exhaustive { next, end } => end - next,
            StreamState::Random { left, .. } => *left as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn emit(&self, bits: impl Fn(usize) -> bool) -> OrientedGraph {
        let mut arcs = self.fixed.clone();
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            arcs.push(if bits(i) { (v, u) } else { (u, v) });
        }
        let d = OrientedGraph::new(self.order, arcs).expect("orientable pairs are disjoint");
        let (mg, map) = missing_graph(&d);
        assert_eq!(
            map,
            (0..self.expect.order()).collect::<Vec<_>>(),
            "missing graph lost vertices"
        );
        assert_eq!(mg.order(), self.expect.order(), "missing graph changed order");
        for v in 0..mg.order() {
            assert_eq!(
                mg.neighbors_mask(v),
                self.expect.neighbors_mask(v),
                "missing graph changed edges at {}",
                v
            );
        }
        d
    }
}

impl Iterator for OrientationStream {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        match &mut self.state {
            StreamState::Exhaustive { next, end } => {
                if next == end {
                    return None;
                }
                let code = *next;
                *next += 1;
                Some(self.emit(|i| code >> i & 1 == 1))
            }
            StreamState::Random { rng, left } => {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                let draws: Vec<bool> = (0..self.pairs.len()).map(|_| rng.gen()).collect();
                Some(self.emit(|i| draws[i]))
            }
        }
    }
}

/// Stream every (or a random sample of) oriented graph(s) on
/// `V(g) ∪ {extra_whole new vertices}` whose missing graph is exactly `g`:
/// each non-edge pair of `g` receives one arc direction, and each pair
/// touching an extra vertex is fixed by an alternating rule unless the
/// exhaustive product is asked to include those pairs too. Isolated
/// vertices of `g` are rejected: they would drop out of the missing graph.
pub fn orientations_missing(
    g: &Graph,
    extra_whole: usize,
    mode: OrientationMode,
    cap_pairs: usize,
) -> Result<OrientationStream> {
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return Err(Error::IsolatedVertices { vertices: isolated });
    }
    let order = g.order() + extra_whole;
    if order > 64 {
        return Err(Error::OrderTooLarge { order });
    }
    let mut pairs: Vec<(usize, usize)> = g.non_edges();
    let mut fixed = Vec::new();
    let include_extra = matches!(mode, OrientationMode::Exhaustive { include_extra: true });
    for k in 0..extra_whole {
        let w = g.order() + k;
        for v in 0..w {
            if include_extra {
                pairs.push((v, w));
            } else if (v + k) % 2 == 0 {
                fixed.push((w, v));
            } else {
                fixed.push((v, w));
            }
        }
    }
    let state = match mode {
        OrientationMode::Exhaustive { .. } => {
            if pairs.len() > cap_pairs {
                return Err(Error::TooManyPairs { pairs: pairs.len(), cap: cap_pairs });
            }
            StreamState::Exhaustive { next: 0, end: 1u64 << pairs.len() }
        }
        OrientationMode::Random { samples, seed } => StreamState::Random {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            left: samples,
        },
    };
    Ok(OrientationStream { order, expect: g.clone(), fixed, pairs, state })
}

/// The fixed digraphs showing that dependency digraphs of general missing
/// graphs need not be disjoint unions of paths: the first has a two-cycle
/// between its two missing edges, the other two each have a missing edge
/// losing to two different missing edges. Their missing graphs are the
/// four-cycle complement, the chair, and the co-chair.
pub fn dependency_counterexamples() -> [OrientedGraph; 3] {
    let two_cycle = OrientedGraph::new(4, vec![(0, 2), (1, 3), (3, 0), (2, 1)]);
    let chair_branch =
        OrientedGraph::new(5, vec![(0, 3), (1, 2), (2, 0), (1, 4), (4, 0), (4, 2)]);
    let cochair_branch = OrientedGraph::new(5, vec![(0, 2), (1, 3), (3, 0), (0, 4)]);
    [
        two_cycle.expect("fixed arc list is valid"),
        chair_branch.expect("fixed arc list is valid"),
        cochair_branch.expect("fixed arc list is valid"),
    ]
}

/// All vectors of the given length with per-position minimums and total at
/// most `budget`, in lexicographic order.
fn bounded_vectors(mins: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(mins.len());
    fn rec(mins: &[usize], budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == mins.len() {
            out.push(cur.clone());
            return;
        }
        let i = cur.len();
        let tail_min: usize = mins[i + 1..].iter().sum();
        let lo = mins[i];
        if lo + tail_min > budget {
            return;
        }
        for v in lo..=budget - tail_min {
            cur.push(v);
            rec(mins, budget - v, cur, out);
            cur.pop();
        }
    }
    rec(mins, budget, &mut cur, &mut out);
    out
}

fn threshold_mins(n1: usize) -> (Vec<usize>, Vec<usize>) {
    let mut a_mins = vec![1; n1];
    a_mins[0] = 0;
    let mut x_mins = vec![1; n1];
    x_mins[n1 - 1] = 0;
    (a_mins, x_mins)
}

/// Every valid layered-split-graph spec with at most `max_order` vertices,
/// in deterministic order.
pub fn threshold_specs_up_to(max_order: usize) -> Vec<ThresholdSpec> {
    let mut out = Vec::new();
    for n1 in 1..=max_order + 1 {
        let (a_mins, x_mins) = threshold_mins(n1);
        if a_mins.iter().sum::<usize>() + x_mins.iter().sum::<usize>() > max_order {
            break;
        }
        for a in bounded_vectors(&a_mins, max_order) {
            let left = max_order - a.iter().sum::<usize>();
            for x in bounded_vectors(&x_mins, left) {
                let spec = ThresholdSpec { a: a.clone(), x };
                if spec.order() >= 1 && spec.validate().is_ok() {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Every valid comb spec (five-cycle flag off) with at most `max_order`
/// vertices, in deterministic order. Forced block sizes (each matched pair
/// of blocks shares its size) are not enumerated, only their free
/// complements.
pub fn comb_specs_up_to(max_order: usize) -> Vec<CombSpec> {
    let mut out = Vec::new();
    for n1 in 1..=max_order + 1 {
        for l in 0..=max_order {
            if (n1 - 1) + l > max_order {
                continue;
            }
            let a_mins = {
                let mut v = vec![1; n1];
                v[0] = 0;
                v
            };
            let m_mins = vec![1usize; l];
            for m in bounded_vectors(&m_mins, max_order) {
                let m_sum: usize = m.iter().sum();
                for a in bounded_vectors(&a_mins, max_order - m_sum) {
                    let used_am = m_sum + a.iter().sum::<usize>();
                    // The first clique layer is forced to the first matched
                    // block's size when there is one; the last layer is the
                    // only free-to-be-empty one.
                    let x_candidates: Vec<Vec<usize>> = if l >= 1 {
                        if used_am + m[0] > max_order {
                            Vec::new()
                        } else if n1 == 1 {
                            vec![vec![m[0]]]
                        } else {
                            let mut tail_mins = vec![1; n1 - 1];
                            tail_mins[n1 - 2] = 0;
                            bounded_vectors(&tail_mins, max_order - used_am - m[0])
                                .into_iter()
                                .map(|t| {
                                    let mut v = vec![m[0]];
                                    v.extend(t);
                                    v
                                })
                                .collect()
                        }
                    } else {
                        let mut mins = vec![1; n1];
                        mins[n1 - 1] = 0;
                        bounded_vectors(&mins, max_order - used_am)
                    };
                    for x in x_candidates {
                        let used = used_am + x.iter().sum::<usize>();
                        // All trailing clique blocks except the last two are
                        // forced to their matched block's size; the last two
                        // are free and possibly empty.
                        let y_prefix: Vec<usize> =
                            (0..l.saturating_sub(1)).map(|j| m[j + 1]).collect();
                        let prefix_sum: usize = y_prefix.iter().sum();
                        if used + prefix_sum > max_order {
                            continue;
                        }
                        let free = if l == 0 { 1 } else { 2 };
                        for tail in bounded_vectors(&vec![0; free], max_order - used - prefix_sum)
                        {
                            let mut y = y_prefix.clone();
                            y.extend(tail);
                            let spec = CombSpec {
                                a: a.clone(),
                                m: m.clone(),
                                x: x.clone(),
                                y,
                                attach_c5: false,
                            };
                            if spec.comb_order() >= 1 && spec.validate().is_ok() {
                                out.push(spec);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

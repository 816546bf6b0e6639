//! Certified recognizers for three nested graph classes: threshold graphs,
//! generalized combs, and the target class (a generalized comb plus an
//! optional five-cycle attached completely to the clique side).
//!
//! Every acceptance carries an explicit block decomposition that is
//! re-validated clause by clause before being returned; every rejection
//! carries a concrete induced forbidden pattern. A pattern-free graph for
//! which no decomposition can be found is reported as an internal
//! inconsistency, since the characterization theorems rule that out.

use serde::{Deserialize, Serialize};

use crate::graph::{bit, mask_to_vec, vec_to_mask, BitIter, Graph};
use crate::patterns::{
    find_any_induced, find_induced, Pattern, PatternWitness, COMB_PATTERNS, TARGET_PATTERNS,
    THRESHOLD_PATTERNS,
};
use crate::{Error, Result};

/// Outcome of a recognizer: a validated decomposition or a concrete induced
/// forbidden pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "lowercase")]
pub enum Verdict<D> {
    Accept(D),
    Reject(PatternWitness),
}

impl<D> Verdict<D> {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept(_))
    }

    pub fn accepted(&self) -> Option<&D> {
        match self {
            Verdict::Accept(d) => Some(d),
            Verdict::Reject(_) => None,
        }
    }

    pub fn rejected(&self) -> Option<&PatternWitness> {
        match self {
            Verdict::Accept(_) => None,
            Verdict::Reject(w) => Some(w),
        }
    }
}

/// Threshold block structure. `a[i]` is the stable block adjacent to exactly
/// the clique blocks `x[0..i]`; `a[0]` is the isolated block. Both lists
/// have length `n + 1`, and only `a[0]` and the final `x` block may be
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThresholdDecomposition {
    #[serde(rename = "A")]
    pub a: Vec<Vec<usize>>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<usize>>,
}

/// Generalized comb block structure.
///
/// * `a[0]` is the isolated stable block; `a[i]` for `i >= 1` is complete to
///   `x[0..i]` and to every `y` block, with no other edges.
/// * `m[i]` is a stable block matched perfectly to `y[i]` and complete to
///   `y[i+1..=l]` where `l = m.len()`, with no other edges.
/// * `x` and `y` blocks together form a clique; `y[0]` and `x[0]` are the
///   same block listed twice.
/// * `matching` lists every matched pair as `(y_vertex, m_vertex)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombDecomposition {
    #[serde(rename = "A")]
    pub a: Vec<Vec<usize>>,
    #[serde(rename = "M")]
    pub m: Vec<Vec<usize>>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<usize>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<usize>>,
    pub matching: Vec<(usize, usize)>,
}

impl CombDecomposition {
    /// Stable side: all `a` and `m` vertices.
    pub fn s_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.a.iter().flatten().chain(self.m.iter().flatten()).copied().collect();
        v.sort_unstable();
        v
    }

    /// Clique side: all `x` and `y` vertices.
    pub fn k_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.x.iter().flatten().chain(self.y.iter().skip(1).flatten()).copied().collect();
        v.sort_unstable();
        v
    }
}

/// Target-class structure: a generalized comb on the vertices outside `c`,
/// plus `c` either empty or inducing a five-cycle that is complete to the
/// comb's clique side and non-adjacent to its stable side. `c` lists the
/// five-cycle in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetDecomposition {
    #[serde(flatten)]
    pub comb: CombDecomposition,
    #[serde(rename = "C")]
    pub c: Vec<usize>,
}

fn fail(msg: String) -> Error {
    Error::Inconsistency(msg)
}

fn block_mask(g: &Graph, block: &[usize], what: &str) -> Result<u64> {
    if block.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(format!("{} block {:?} is not strictly ascending", what, block)));
    }
    vec_to_mask(block, g.order())
}

fn union_masks(g: &Graph, blocks: &[Vec<usize>], what: &str) -> Result<(Vec<u64>, u64)> {
    let mut masks = Vec::with_capacity(blocks.len());
    let mut all = 0u64;
    for b in blocks {
        let m = block_mask(g, b, what)?;
        if all & m != 0 {
            return Err(fail(format!("{} blocks overlap at vertex {}", what, (all & m).trailing_zeros())));
        }
        all |= m;
        masks.push(m);
    }
    Ok((masks, all))
}

/// Check that `a` blocks relate to `x` blocks as in a threshold structure:
/// each vertex of `a[i]` is adjacent to exactly the union of `x[0..i]`.
fn check_layered_neighborhoods(
    g: &Graph,
    a_masks: &[u64],
    x_masks: &[u64],
    extra: u64,
) -> Result<()> {
    let mut below = 0u64;
    for (i, &am) in a_masks.iter().enumerate() {
        let expected = if i == 0 { 0 } else { below | extra };
        for v in BitIter(am) {
            if g.neighbors_mask(v) != expected {
                return Err(fail(format!(
                    "stable vertex {} in block {} has neighborhood {:?}, expected {:?}",
                    v,
                    i,
                    mask_to_vec(g.neighbors_mask(v)),
                    mask_to_vec(expected)
                )));
            }
        }
        if i < x_masks.len() {
            below |= x_masks[i];
        }
    }
    Ok(())
}

/// Validate a threshold decomposition clause by clause.
pub fn validate_threshold_decomposition(g: &Graph, d: &ThresholdDecomposition) -> Result<()> {
    if d.a.is_empty() || d.a.len() != d.x.len() {
        return Err(fail(format!(
            "block lists must have equal positive length, got {} stable and {} clique blocks",
            d.a.len(),
            d.x.len()
        )));
    }
    let n = d.a.len() - 1;
    let (a_masks, s_mask) = union_masks(g, &d.a, "stable")?;
    let (x_masks, k_mask) = union_masks(g, &d.x, "clique")?;
    if s_mask & k_mask != 0 || s_mask | k_mask != g.vertex_mask() {
        return Err(fail("blocks do not partition the vertex set".into()));
    }
    for i in 1..=n {
        if a_masks[i] == 0 {
            return Err(fail(format!("stable block {} is empty", i)));
        }
        if x_masks[i - 1] == 0 {
            return Err(fail(format!("clique block {} is empty", i - 1)));
        }
    }
    if !g.is_stable_mask(s_mask) {
        return Err(fail("stable side has an internal edge".into()));
    }
    if !g.is_clique_mask(k_mask) {
        return Err(fail("clique side misses an internal edge".into()));
    }
    check_layered_neighborhoods(g, &a_masks, &x_masks, 0)
}

/// Validate a generalized-comb decomposition clause by clause.
pub fn validate_comb_decomposition(g: &Graph, d: &CombDecomposition) -> Result<()> {
    if d.a.is_empty() || d.a.len() != d.x.len() {
        return Err(fail(format!(
            "a and x lists must have equal positive length, got {} and {}",
            d.a.len(),
            d.x.len()
        )));
    }
    if d.y.len() != d.m.len() + 2 {
        return Err(fail(format!(
            "y list must have exactly two more blocks than m, got {} and {}",
            d.y.len(),
            d.m.len()
        )));
    }
    if d.y[0] != d.x[0] {
        return Err(fail("first y block must equal the first x block".into()));
    }
    let n = d.a.len() - 1;
    let l = d.m.len();
    let (a_masks, a_all) = union_masks(g, &d.a, "a")?;
    let (m_masks, m_all) = union_masks(g, &d.m, "m")?;
    let (x_masks, x_all) = union_masks(g, &d.x, "x")?;
    let (y_masks, y_tail) = union_masks(g, &d.y[1..], "y")?;
    let y_masks: Vec<u64> = std::iter::once(x_masks[0]).chain(y_masks).collect();
    let y_all = x_masks[0] | y_tail;
    let s_mask = a_all | m_all;
    let k_mask = x_all | y_tail;
    if a_all & m_all != 0
        || x_all & y_tail != 0
        || s_mask & k_mask != 0
        || s_mask | k_mask != g.vertex_mask()
    {
        return Err(fail("blocks do not partition the vertex set".into()));
    }
    // Emptiness rules: only the last x block, the last two y blocks, and the
    // isolated a block may be empty, except that the shared block x[0]=y[0]
    // may also be empty when it doubles as a permitted-empty block of the
    // other family (n = 0 or l = 0).
    for i in 1..=n {
        if a_masks[i] == 0 {
            return Err(fail(format!("a block {} is empty", i)));
        }
        if x_masks[i - 1] == 0 && !(i == 1 && l == 0) {
            return Err(fail(format!("x block {} is empty", i - 1)));
        }
    }
    for i in 1..=l {
        if y_masks[i - 1] == 0 && !(i == 1 && n == 0) {
            return Err(fail(format!("y block {} is empty", i - 1)));
        }
    }
    if !g.is_stable_mask(s_mask) {
        return Err(fail("stable side has an internal edge".into()));
    }
    if !g.is_clique_mask(k_mask) {
        return Err(fail("clique side misses an internal edge".into()));
    }
    // Matching: within block i, every m vertex pairs with exactly one
    // y-block-i vertex and vice versa, over an existing edge.
    let mut match_of = vec![usize::MAX; g.order()];
    let mut seen_y = 0u64;
    let mut seen_m = 0u64;
    for &(yv, mv) in &d.matching {
        if yv >= g.order() || mv >= g.order() {
            return Err(fail(format!("matched pair ({}, {}) out of range", yv, mv)));
        }
        if !g.has_edge(yv, mv) {
            return Err(fail(format!("matched pair ({}, {}) is not an edge", yv, mv)));
        }
        if seen_y & bit(yv) != 0 || seen_m & bit(mv) != 0 {
            return Err(fail(format!("vertex matched twice in pair ({}, {})", yv, mv)));
        }
        let bi = (0..l).find(|&i| m_masks[i] & bit(mv) != 0);
        let yi = (0..l).find(|&i| y_masks[i] & bit(yv) != 0);
        match (bi, yi) {
            (Some(b), Some(yb)) if b == yb => {}
            _ => {
                return Err(fail(format!(
                    "matched pair ({}, {}) does not join y block and m block of the same index",
                    yv, mv
                )))
            }
        }
        seen_y |= bit(yv);
        seen_m |= bit(mv);
        match_of[mv] = yv;
    }
    if seen_m != m_all {
        return Err(fail("some m vertex is unmatched".into()));
    }
    for i in 0..l {
        if y_masks[i] & !seen_y != 0 && m_masks[i] != 0 {
            return Err(fail(format!("y block {} has an unmatched vertex", i)));
        }
        if m_masks[i] != 0 && (y_masks[i] & seen_y).count_ones() != m_masks[i].count_ones() {
            return Err(fail(format!("blocks {} are not matched bijectively", i)));
        }
    }
    let sorted = {
        let mut s = d.matching.clone();
        s.sort_unstable();
        s
    };
    if sorted != d.matching {
        return Err(fail("matching list is not sorted".into()));
    }
    // Exact neighborhoods of m vertices: the match plus all later y blocks
    // up to block l (the final y block is non-adjacent to every m vertex).
    for i in 1..=l {
        let later: u64 = (i..=l).map(|j| y_masks[j]).fold(0, |acc, m| acc | m);
        for mv in BitIter(m_masks[i - 1]) {
            let expected = bit(match_of[mv]) | later;
            if g.neighbors_mask(mv) != expected {
                return Err(fail(format!(
                    "m vertex {} has neighborhood {:?}, expected {:?}",
                    mv,
                    mask_to_vec(g.neighbors_mask(mv)),
                    mask_to_vec(expected)
                )));
            }
        }
    }
    // Exact neighborhoods of a vertices: a[0] isolated, a[i] adjacent to
    // x[0..i] plus every y block.
    check_layered_neighborhoods(g, &a_masks, &x_masks, y_all)
}

/// Validate a target-class decomposition clause by clause.
pub fn validate_target_decomposition(g: &Graph, d: &TargetDecomposition) -> Result<()> {
    if d.c.is_empty() {
        return validate_comb_decomposition(g, &d.comb);
    }
    if d.c.len() != 5 {
        return Err(fail(format!("c must have 0 or 5 vertices, got {}", d.c.len())));
    }
    let c_mask = vec_to_mask(&d.c, g.order())?;
    // c lists a five-cycle in cyclic order, induced.
    for i in 0..5 {
        for j in i + 1..5 {
            let adjacent = g.has_edge(d.c[i], d.c[j]);
            let consecutive = j - i == 1 || (i, j) == (0, 4);
            if adjacent != consecutive {
                return Err(fail(format!(
                    "c vertices {} and {} break the five-cycle shape",
                    d.c[i], d.c[j]
                )));
            }
        }
    }
    let rest = mask_to_vec(g.vertex_mask() & !c_mask);
    let (sub, map) = g.induced(&rest)?;
    let mut index = vec![usize::MAX; g.order()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let local = |block: &Vec<usize>| -> Result<Vec<usize>> {
        block
            .iter()
            .map(|&v| {
                if v < g.order() && index[v] != usize::MAX {
                    Ok(index[v])
                } else {
                    Err(fail(format!("comb block vertex {} lies in c or out of range", v)))
                }
            })
            .collect()
    };
    let comb_local = CombDecomposition {
        a: d.comb.a.iter().map(local).collect::<Result<_>>()?,
        m: d.comb.m.iter().map(local).collect::<Result<_>>()?,
        x: d.comb.x.iter().map(local).collect::<Result<_>>()?,
        y: d.comb.y.iter().map(local).collect::<Result<_>>()?,
        matching: d
            .comb
            .matching
            .iter()
            .map(|&(y, m)| Ok((local(&vec![y])?[0], local(&vec![m])?[0])))
            .collect::<Result<_>>()?,
    };
    validate_comb_decomposition(&sub, &comb_local)?;
    let k_mask = vec_to_mask(&d.comb.k_vertices(), g.order())?;
    for (pos, &cv) in d.c.iter().enumerate() {
        let cyc = bit(d.c[(pos + 1) % 5]) | bit(d.c[(pos + 4) % 5]);
        let expected = k_mask | cyc;
        if g.neighbors_mask(cv) != expected {
            return Err(fail(format!(
                "c vertex {} has neighborhood {:?}, expected clique side plus cycle neighbors {:?}",
                cv,
                mask_to_vec(g.neighbors_mask(cv)),
                mask_to_vec(expected)
            )));
        }
    }
    Ok(())
}

/// Whether `(s, k)` is a split pair of `g` with every cross pair adjacent.
/// The sides must partition the vertex set, `s` must be stable, and `k` must
/// be a clique; violations are errors, not a `false` answer.
pub fn is_complete_split_pair(g: &Graph, s: &[usize], k: &[usize]) -> Result<bool> {
    let (s_mask, k_mask) = split_pair_masks(g, s, k)?;
    Ok(BitIter(s_mask).all(|v| g.neighbors_mask(v) & k_mask == k_mask))
}

/// Whether `(s, k)` is a split pair of `g` whose cross edges form a perfect
/// matching of the whole split subgraph. Preconditions as in
/// [`is_complete_split_pair`].
pub fn is_perfect_split_pair(g: &Graph, s: &[usize], k: &[usize]) -> Result<bool> {
    let (s_mask, k_mask) = split_pair_masks(g, s, k)?;
    let s_ok = BitIter(s_mask).all(|v| (g.neighbors_mask(v) & k_mask).count_ones() == 1);
    let k_ok = BitIter(k_mask).all(|v| (g.neighbors_mask(v) & s_mask).count_ones() == 1);
    Ok(s_ok && k_ok)
}

fn split_pair_masks(g: &Graph, s: &[usize], k: &[usize]) -> Result<(u64, u64)> {
    let s_mask = vec_to_mask(s, g.order())?;
    let k_mask = vec_to_mask(k, g.order())?;
    if s_mask & k_mask != 0 {
        return Err(Error::NotPartition {
            vertex: (s_mask & k_mask).trailing_zeros() as usize,
            problem: "on both sides",
        });
    }
    if s_mask | k_mask != g.vertex_mask() {
        return Err(Error::NotPartition {
            vertex: (g.vertex_mask() & !(s_mask | k_mask)).trailing_zeros() as usize,
            problem: "on neither side",
        });
    }
    for v in BitIter(s_mask) {
        let hit = g.neighbors_mask(v) & s_mask;
        if hit != 0 {
            return Err(Error::SideNotStable { u: v, v: hit.trailing_zeros() as usize });
        }
    }
    for v in BitIter(k_mask) {
        let missing = k_mask & !g.neighbors_mask(v) & !bit(v);
        if missing != 0 {
            return Err(Error::SideNotClique { u: v, v: missing.trailing_zeros() as usize });
        }
    }
    Ok((s_mask, k_mask))
}

/// Recognize threshold graphs by alternately peeling the isolated batch and
/// the dominating batch, starting with the isolated block.
pub fn is_threshold(g: &Graph) -> Result<Verdict<ThresholdDecomposition>> {
    if let Some(w) = find_any_induced(g, &THRESHOLD_PATTERNS) {
        return Ok(Verdict::Reject(w));
    }
    let mut remaining = g.vertex_mask();
    let isolated_in = |mask: u64, v: usize| g.neighbors_mask(v) & mask == 0;
    let dominating_in = |mask: u64, v: usize| g.neighbors_mask(v) & mask == mask & !bit(v);
    let mut a: Vec<Vec<usize>> = Vec::new();
    let mut x: Vec<Vec<usize>> = Vec::new();
    let batch = |mask: u64, pred: &dyn Fn(u64, usize) -> bool| -> u64 {
        BitIter(mask).filter(|&v| pred(mask, v)).fold(0, |acc, v| acc | bit(v))
    };
    a.push(mask_to_vec(batch(remaining, &isolated_in)));
    remaining &= !vec_to_mask(&a[0], g.order())?;
    while remaining != 0 {
        let xs = batch(remaining, &dominating_in);
        if xs == 0 {
            return Err(fail(format!(
                "pattern-free graph {:?} has no dominating vertex while peeling",
                g
            )));
        }
        x.push(mask_to_vec(xs));
        remaining &= !xs;
        if remaining == 0 {
            break;
        }
        let asb = batch(remaining, &isolated_in);
        if asb == 0 {
            return Err(fail(format!(
                "pattern-free graph {:?} has no isolated vertex while peeling",
                g
            )));
        }
        a.push(mask_to_vec(asb));
        remaining &= !asb;
    }
    while x.len() < a.len() {
        x.push(Vec::new());
    }
    let d = ThresholdDecomposition { a, x };
    validate_threshold_decomposition(g, &d)?;
    Ok(Verdict::Accept(d))
}

/// All partitions of the vertices of `g` into a stable set and a clique,
/// as `(stable_mask, clique_mask)` pairs in deterministic order.
fn split_partitions(g: &Graph) -> Vec<(u64, u64)> {
    fn rec(g: &Graph, v: usize, s: u64, k: u64, out: &mut Vec<(u64, u64)>) {
        if v == g.order() {
            out.push((s, k));
            return;
        }
        if g.neighbors_mask(v) & s == 0 {
            rec(g, v + 1, s | bit(v), k, out);
        }
        if k & !g.neighbors_mask(v) == 0 {
            rec(g, v + 1, s, k | bit(v), out);
        }
    }
    let mut out = Vec::new();
    rec(g, 0, 0, 0, &mut out);
    out
}

/// Group the prospective matched stable vertices into blocks by descending
/// degree; within one block all degrees agree.
fn m_degree_blocks(g: &Graph, m_set: u64) -> Vec<u64> {
    let mut by_degree: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for v in BitIter(m_set) {
        *by_degree.entry(g.degree(v)).or_insert(0) |= bit(v);
    }
    by_degree.into_values().rev().collect()
}

/// Candidate match assignments for one m block: for blocks of two or more
/// vertices the matches are forced (each vertex's neighborhood minus the
/// common intersection must be a single vertex), while a one-vertex block
/// may match any of its neighbors.
fn block_match_options(g: &Graph, block: u64) -> Vec<Vec<(usize, usize)>> {
    let members = mask_to_vec(block);
    if members.len() >= 2 {
        let common = members.iter().fold(u64::MAX, |acc, &v| acc & g.neighbors_mask(v));
        let mut pairs = Vec::with_capacity(members.len());
        let mut seen = 0u64;
        for &v in &members {
            let diff = g.neighbors_mask(v) & !common;
            if diff.count_ones() != 1 || seen & diff != 0 {
                return Vec::new();
            }
            seen |= diff;
            pairs.push((v, diff.trailing_zeros() as usize));
        }
        vec![pairs]
    } else {
        let v = members[0];
        g.neighbors(v).map(|y| vec![(v, y)]).collect()
    }
}

struct BlockContext {
    w_mask: u64,
    y_mask: u64,
    isolated: u64,
    a_nonisolated: u64,
}

/// Assemble every valid comb decomposition for a fixed split partition,
/// clique subdivision, and stable-side classification, appending them to
/// `out`.
fn assemble_candidates(
    g: &Graph,
    ctx: &BlockContext,
    m_blocks: &[u64],
    assignment: &[Vec<(usize, usize)>],
    out: &mut Vec<CombDecomposition>,
) {
    let r = m_blocks.len();
    // Matched y blocks, one per nonempty m block; they must not collide.
    let mut matched_y: Vec<u64> = Vec::with_capacity(r);
    let mut used_y = 0u64;
    for pairs in assignment {
        let mut yb = 0u64;
        for &(_, y) in pairs {
            yb |= bit(y);
        }
        if yb & used_y != 0 {
            return;
        }
        used_y |= yb;
        matched_y.push(yb);
    }
    // An unmatched y vertex lands in a y block whose m block is empty, so its
    // m neighborhood is exactly the union of the m blocks placed before it;
    // group the unmatched vertices by that prefix length.
    let mut prefix = vec![0u64; r + 1];
    for i in 0..r {
        prefix[i + 1] = prefix[i] | m_blocks[i];
    }
    let mut unmatched = vec![0u64; r + 1];
    for v in BitIter(ctx.y_mask & !used_y) {
        let seen = g.neighbors_mask(v) & prefix[r];
        match prefix.iter().position(|&p| p == seen) {
            Some(t) => unmatched[t] |= bit(v),
            None => return,
        }
    }
    // Interleave: after the matched level of block i comes a level with an
    // empty m block holding the unmatched vertices seen by exactly blocks
    // 1..=i. Vertices seen by every m block close the list as y block l+1,
    // vertices seen by none as y block l+2.
    let mut m_levels: Vec<u64> = Vec::new();
    let mut y_blocks: Vec<u64> = Vec::new();
    let mut level_of_block = Vec::with_capacity(r);
    for i in 0..r {
        level_of_block.push(m_levels.len());
        m_levels.push(m_blocks[i]);
        y_blocks.push(matched_y[i]);
        if i + 1 < r && unmatched[i + 1] != 0 {
            m_levels.push(0);
            y_blocks.push(unmatched[i + 1]);
        }
    }
    let l = m_levels.len();
    y_blocks.push(if r > 0 { unmatched[r] } else { 0 });
    y_blocks.push(unmatched[0]);
    // Exact m neighborhoods: the match plus all later y blocks up to l+1.
    for (i, pairs) in assignment.iter().enumerate() {
        let p = level_of_block[i];
        let later: u64 = y_blocks[p + 1..=l].iter().fold(0, |acc, &m| acc | m);
        for &(mv, yv) in pairs {
            if g.neighbors_mask(mv) != bit(yv) | later {
                return;
            }
        }
    }
    // a-side: the clique-subdivision neighborhoods of the non-isolated
    // stable vertices must form a strict chain.
    let mut wn_groups: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    for v in BitIter(ctx.a_nonisolated) {
        *wn_groups.entry(g.neighbors_mask(v) & ctx.w_mask).or_insert(0) |= bit(v);
    }
    let mut a1 = wn_groups.remove(&0).unwrap_or(0);
    let mut isolated = ctx.isolated;
    if ctx.w_mask != 0 && a1 == 0 {
        if ctx.y_mask == 0 && isolated != 0 {
            let borrow = bit(isolated.trailing_zeros() as usize);
            a1 = borrow;
            isolated &= !borrow;
        } else {
            return;
        }
    }
    let mut chain: Vec<(u64, u64)> = wn_groups.into_iter().collect();
    chain.sort_by_key(|&(wn, _)| wn.count_ones());
    let mut prev = 0u64;
    for &(wn, _) in &chain {
        if wn & prev != prev || wn == prev {
            return;
        }
        prev = wn;
    }
    let x1 = if l >= 1 { y_blocks[0] } else { 0 };
    let (a_masks, x_masks): (Vec<u64>, Vec<u64>) = if ctx.w_mask == 0 {
        if a1 != 0 {
            (vec![isolated, a1], vec![x1, 0])
        } else {
            (vec![isolated], vec![x1])
        }
    } else {
        let mut am = vec![isolated, a1];
        let mut xm = vec![x1];
        let mut covered = 0u64;
        for &(wn, verts) in &chain {
            xm.push(wn & !covered);
            am.push(verts);
            covered = wn;
        }
        xm.push(ctx.w_mask & !covered);
        (am, xm)
    };
    let matching: Vec<(usize, usize)> = {
        let mut pairs: Vec<(usize, usize)> =
            assignment.iter().flatten().map(|&(mv, yv)| (yv, mv)).collect();
        pairs.sort_unstable();
        pairs
    };
    let d = CombDecomposition {
        a: a_masks.iter().map(|&m| mask_to_vec(m)).collect(),
        m: m_levels.iter().map(|&m| mask_to_vec(m)).collect(),
        x: x_masks.iter().map(|&m| mask_to_vec(m)).collect(),
        y: y_blocks.iter().map(|&m| mask_to_vec(m)).collect(),
        matching,
    };
    if validate_comb_decomposition(g, &d).is_ok() {
        out.push(d);
    }
}

fn match_product(
    g: &Graph,
    ctx: &BlockContext,
    m_blocks: &[u64],
    options: &[Vec<Vec<(usize, usize)>>],
    chosen: &mut Vec<Vec<(usize, usize)>>,
    out: &mut Vec<CombDecomposition>,
) {
    if chosen.len() == options.len() {
        assemble_candidates(g, ctx, m_blocks, chosen, out);
        return;
    }
    for opt in &options[chosen.len()] {
        chosen.push(opt.clone());
        match_product(g, ctx, m_blocks, options, chosen, out);
        chosen.pop();
    }
}

/// Search for comb decompositions of `g` over all split partitions and
/// clique subdivisions, honoring forced side masks, and return the
/// lexicographically least valid one.
fn search_comb(g: &Graph, force_s: u64, force_k: u64) -> Option<CombDecomposition> {
    let mut candidates: Vec<CombDecomposition> = Vec::new();
    for (s_mask, k_mask) in split_partitions(g) {
        if s_mask & force_k != 0 || k_mask & force_s != 0 {
            continue;
        }
        // Enumerate the clique subdivision: w is the part of the clique laid
        // out in x blocks after the first.
        let mut w = k_mask;
        loop {
            try_blocks(g, s_mask, k_mask, w, &mut candidates);
            if w == 0 {
                break;
            }
            w = (w - 1) & k_mask;
        }
    }
    candidates.into_iter().min()
}

fn try_blocks(g: &Graph, s_mask: u64, k_mask: u64, w_mask: u64, out: &mut Vec<CombDecomposition>) {
    let y_mask = k_mask & !w_mask;
    let mut isolated = 0u64;
    let mut forced_a = 0u64;
    let mut forced_m = 0u64;
    let mut ambiguous = 0u64;
    for v in BitIter(s_mask) {
        let ns = g.neighbors_mask(v);
        if ns == 0 {
            isolated |= bit(v);
            continue;
        }
        let sees_all_y = ns & y_mask == y_mask;
        let has_w = ns & w_mask != 0;
        match (sees_all_y, has_w) {
            (true, true) => forced_a |= bit(v),
            (true, false) => ambiguous |= bit(v),
            (false, false) => forced_m |= bit(v),
            (false, true) => return,
        }
    }
    // An ambiguous vertex sees exactly the y side, which fits both an
    // a block and an m block; at most one of them can be matched, so try
    // all-a plus each single defection.
    let mut splits: Vec<(u64, u64)> = vec![(ambiguous, 0)];
    for v in BitIter(ambiguous) {
        splits.push((ambiguous & !bit(v), bit(v)));
    }
    for (extra_a, extra_m) in splits {
        let ctx = BlockContext {
            w_mask,
            y_mask,
            isolated,
            a_nonisolated: forced_a | extra_a,
        };
        let m_blocks = m_degree_blocks(g, forced_m | extra_m);
        let options: Vec<Vec<Vec<(usize, usize)>>> =
            m_blocks.iter().map(|&b| block_match_options(g, b)).collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        let mut chosen = Vec::with_capacity(m_blocks.len());
        match_product(g, &ctx, &m_blocks, &options, &mut chosen, out);
    }
}

/// Recognize generalized combs: reject with a forbidden pattern, or accept
/// with the lexicographically least block decomposition found by the
/// canonical search.
pub fn is_generalized_comb(g: &Graph) -> Result<Verdict<CombDecomposition>> {
    if let Some(w) = find_any_induced(g, &COMB_PATTERNS) {
        return Ok(Verdict::Reject(w));
    }
    match search_comb(g, 0, 0) {
        Some(d) => {
            validate_comb_decomposition(g, &d)?;
            Ok(Verdict::Accept(d))
        }
        None => Err(fail(format!(
            "graph {:?} avoids every comb pattern but admits no comb decomposition",
            g
        ))),
    }
}

/// Recognize the target class: reject with a forbidden pattern, or accept
/// with a comb decomposition of the graph outside the (unique) five-cycle
/// plus the cycle itself.
pub fn is_target_free(g: &Graph) -> Result<Verdict<TargetDecomposition>> {
    if let Some(w) = find_any_induced(g, &TARGET_PATTERNS) {
        return Ok(Verdict::Reject(w));
    }
    let c5 = find_induced(g, Pattern::C5);
    let c = match c5 {
        None => {
            return match is_generalized_comb(g)? {
                Verdict::Accept(d) => {
                    let t = TargetDecomposition { comb: d, c: Vec::new() };
                    validate_target_decomposition(g, &t)?;
                    Ok(Verdict::Accept(t))
                }
                Verdict::Reject(w) => Err(fail(format!(
                    "five-cycle-free graph {:?} avoids every target pattern yet contains {:?}",
                    g, w
                ))),
            };
        }
        Some(w) => w.vertices,
    };
    let c_mask = vec_to_mask(&c, g.order())?;
    // Outside the cycle, every vertex must be adjacent to all of it (clique
    // side) or none of it (stable side).
    let mut force_k_local = 0u64;
    let mut force_s_local = 0u64;
    let rest = mask_to_vec(g.vertex_mask() & !c_mask);
    let (sub, map) = g.induced(&rest)?;
    for (i, &v) in map.iter().enumerate() {
        let hits = (g.neighbors_mask(v) & c_mask).count_ones();
        match hits {
            5 => force_k_local |= bit(i),
            0 => force_s_local |= bit(i),
            _ => {
                return Err(fail(format!(
                    "target-pattern-free graph {:?} has vertex {} adjacent to only part of the five-cycle {:?}",
                    g, v, c
                )))
            }
        }
    }
    if let Some(w) = find_any_induced(&sub, &COMB_PATTERNS) {
        return Err(fail(format!(
            "outside the five-cycle {:?} of {:?}, pattern {:?} survives",
            c, g, w
        )));
    }
    let local = match search_comb(&sub, force_s_local, force_k_local) {
        Some(d) => d,
        None => {
            return Err(fail(format!(
                "graph {:?} minus its five-cycle {:?} admits no comb decomposition with the forced sides",
                g, c
            )))
        }
    };
    let lift = |block: &Vec<usize>| -> Vec<usize> { block.iter().map(|&v| map[v]).collect() };
    let comb = CombDecomposition {
        a: local.a.iter().map(lift).collect(),
        m: local.m.iter().map(lift).collect(),
        x: local.x.iter().map(lift).collect(),
        y: local.y.iter().map(lift).collect(),
        matching: local.matching.iter().map(|&(y, m)| (map[y], map[m])).collect(),
    };
    let t = TargetDecomposition { comb, c };
    validate_target_decomposition(g, &t)?;
    Ok(Verdict::Accept(t))
}

/// Remove the matched edges of a comb decomposition; the remainder must be a
/// threshold graph, whose decomposition is returned with it.
pub fn comb_strip(g: &Graph, d: &CombDecomposition) -> Result<(Graph, ThresholdDecomposition)> {
    validate_comb_decomposition(g, d)?;
    let stripped = g.without_edges(&d.matching)?;
    match is_threshold(&stripped)? {
        Verdict::Accept(td) => Ok((stripped, td)),
        Verdict::Reject(w) => Err(fail(format!(
            "comb {:?} minus its matching is not threshold: contains {:?}",
            g, w
        ))),
    }
}

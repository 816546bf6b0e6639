//! Median orders of oriented graphs: orderings maximizing the number of
//! forward arcs, the interval feedback property they satisfy, feed vertices,
//! and a local-search variant for orders beyond the exact solver's cap.

use serde::{Deserialize, Serialize};

use crate::graph::{bit, OrientedGraph};
use crate::{Error, Result};

/// Default order cap for the exact subset-DP solver.
pub const EXACT_MEDIAN_CAP_DEFAULT: usize = 20;

/// Number of arcs `u -> v` with `u` placed before `v`.
pub fn forward_arc_count(d: &OrientedGraph, order: &[usize]) -> Result<usize> {
    let pos = positions(d, order)?;
    Ok(d.arcs().iter().filter(|&&(u, v)| pos[u] < pos[v]).count())
}

fn positions(d: &OrientedGraph, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != d.order() {
        return Err(Error::Parse(format!(
            "order lists {} vertices, the graph has {}",
            order.len(),
            d.order()
        )));
    }
    let mut pos = vec![usize::MAX; d.order()];
    for (i, &v) in order.iter().enumerate() {
        if v >= d.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: d.order() });
        }
        if pos[v] != usize::MAX {
            return Err(Error::DuplicateVertex { vertex: v });
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// A failed interval condition of the feedback property, in positions of the
/// checked order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeedbackViolation {
    /// The vertex at position `i` sends fewer arcs into positions
    /// `i+1 ..= j` than it receives from them.
    Head { i: usize, j: usize, out_deg: usize, in_deg: usize },
    /// The vertex at position `j` receives fewer arcs from positions
    /// `i ..= j-1` than it sends into them.
    Tail { i: usize, j: usize, out_deg: usize, in_deg: usize },
}

/// Check the interval feedback property of `order`: for all positions
/// `i <= j`, the vertex at `i` dominates the interval after it up to `j`,
/// and the vertex at `j` is dominated by the interval before it down to `i`.
/// Returns the first violation in ascending `(i, j)` order, head condition
/// before tail condition.
pub fn feedback_property_check(
    d: &OrientedGraph,
    order: &[usize],
) -> Result<Option<FeedbackViolation>> {
    positions(d, order)?;
    let n = order.len();
    for i in 0..n {
        let vi = order[i];
        let mut after = 0u64;
        let mut before_of_j = 0u64;
        for k in i..n {
            before_of_j |= bit(order[k]);
            // Intervals for the pair (i, j = k): after = ]i, k], the
            // positions i+1 ..= k; prefix = [i, k[, the positions i ..= k-1.
            if k > i {
                after |= bit(order[k]);
            }
            let prefix = before_of_j & !bit(order[k]);
            let out_deg = (d.out_mask(vi) & after).count_ones() as usize;
            let in_deg = (d.in_mask(vi) & after).count_ones() as usize;
            if out_deg < in_deg {
                return Ok(Some(FeedbackViolation::Head { i, j: k, out_deg, in_deg }));
            }
            let vj = order[k];
            let out_deg = (d.out_mask(vj) & prefix).count_ones() as usize;
            let in_deg = (d.in_mask(vj) & prefix).count_ones() as usize;
            if in_deg < out_deg {
                return Ok(Some(FeedbackViolation::Tail { i, j: k, out_deg, in_deg }));
            }
        }
    }
    Ok(None)
}

/// Exact median order by subset dynamic programming: `f(S)` is the maximum
/// number of forward arcs over orderings of `S`, reached by choosing the
/// first vertex. Reconstruction greedily takes the smallest optimal front
/// vertex, so the result is the lexicographically least optimal order in
/// front form. Orders above `cap` are rejected; the result is checked
/// against the feedback property before being returned.
pub fn exact_median_order(d: &OrientedGraph, cap: usize) -> Result<Vec<usize>> {
    let n = d.order();
    if n > cap {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let full: usize = (1usize << n) - 1;
    let mut f = vec![0u16; full + 1];
    for s in 1..=full {
        let mut best = 0u16;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let gain = (d.out_mask(v) & s as u64).count_ones() as u16;
            let val = gain + f[s & !(1 << v)];
            if val > best {
                best = val;
            }
        }
        f[s] = best;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut chosen = None;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let gain = (d.out_mask(v) & s as u64).count_ones() as u16;
            if gain + f[s & !(1 << v)] == f[s] {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("some vertex attains the subset optimum");
        order.push(v);
        s &= !(1 << v);
    }
    if let Some(violation) = feedback_property_check(d, &order)? {
        return Err(Error::Inconsistency(format!(
            "exact median order {:?} of {:?} violates the feedback property: {:?}",
            order, d, violation
        )));
    }
    Ok(order)
}

/// Local median order: start from the identity order and repeatedly repair
/// the first feedback violation by moving the offending endpoint across the
/// interval. Every repair strictly increases the forward arc count, so the
/// loop terminates with an order satisfying the feedback property; its
/// forward count need not be globally maximal.
pub fn local_median_order(d: &OrientedGraph) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..d.order()).collect();
    loop {
        match feedback_property_check(d, &order)? {
            None => return Ok(order),
            Some(FeedbackViolation::Head { i, j, .. }) => {
                // Move the head just past the interval: positions shift left.
                let v = order.remove(i);
                order.insert(j, v);
            }
            Some(FeedbackViolation::Tail { i, j, .. }) => {
                // Move the tail just before the interval.
                let v = order.remove(j);
                order.insert(i, v);
            }
        }
    }
}

/// The feed vertex of an order: its last vertex.
pub fn feed_vertex(order: &[usize]) -> Option<usize> {
    order.last().copied()
}

/// Reverse the backward arc `u -> v` of `order` (with `v` placed before
/// `u`), checking that the feedback property survives and the forward arc
/// count rises by one.
pub fn reverse_backward_arc(
    d: &OrientedGraph,
    order: &[usize],
    u: usize,
    v: usize,
) -> Result<OrientedGraph> {
    let pos = positions(d, order)?;
    if !d.has_arc(u, v) {
        return Err(Error::NoSuchArc { u, v });
    }
    if pos[u] < pos[v] {
        return Err(Error::NotBackwardArc { u, v });
    }
    let before = forward_arc_count(d, order)?;
    let reversed = d.reverse_arc(u, v)?;
    let after = forward_arc_count(&reversed, order)?;
    if after != before + 1 {
        return Err(Error::Inconsistency(format!(
            "reversing backward arc {}->{} changed the forward count from {} to {}",
            u, v, before, after
        )));
    }
    if let Some(violation) = feedback_property_check(&reversed, order)? {
        return Err(Error::Inconsistency(format!(
            "reversing backward arc {}->{} broke the feedback property: {:?}",
            u, v, violation
        )));
    }
    Ok(reversed)
}

/// JSON form of a computed order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MedianOrderJson {
    pub order: Vec<usize>,
    pub forward_arcs: usize,
}

pub fn median_order_to_json(d: &OrientedGraph, order: &[usize]) -> Result<String> {
    let j = MedianOrderJson { order: order.to_vec(), forward_arcs: forward_arc_count(d, order)? };
    Ok(serde_json::to_string(&j)?)
}

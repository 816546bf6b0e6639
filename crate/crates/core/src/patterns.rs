//! The fixed library of forbidden induced subgraphs and induced-subgraph
//! search.
//!
//! Each pattern is a concrete labeled graph; a hit is reported as the
//! lexicographically least injective embedding that induces the pattern
//! exactly.

use serde::{Deserialize, Serialize};

use crate::graph::{bit, BitIter, Graph};
use crate::{Error, Result};

/// The forbidden patterns used by the recognizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// Four-cycle.
    C4,
    /// Complement of the four-cycle: two disjoint edges.
    C4Complement,
    /// Path on four vertices.
    P4,
    /// Five-cycle.
    C5,
    /// Triangle with one extra vertex attached to each pair of triangle
    /// vertices (the 3-sun).
    ThreeSun,
    /// Path on four vertices with a pendant vertex at the third one.
    Chair,
    /// Complement of the chair.
    CoChair,
}

impl Pattern {
    pub const ALL: [Pattern; 7] = [
        Pattern::C4,
        Pattern::C4Complement,
        Pattern::P4,
        Pattern::C5,
        Pattern::ThreeSun,
        Pattern::Chair,
        Pattern::CoChair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::C4 => "c4",
            Pattern::C4Complement => "c4-complement",
            Pattern::P4 => "p4",
            Pattern::C5 => "c5",
            Pattern::ThreeSun => "3-sun",
            Pattern::Chair => "chair",
            Pattern::CoChair => "co-chair",
        }
    }

    pub fn order(self) -> usize {
        match self {
            Pattern::C4 | Pattern::C4Complement | Pattern::P4 => 4,
            Pattern::C5 | Pattern::Chair | Pattern::CoChair => 5,
            Pattern::ThreeSun => 6,
        }
    }

    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::C4 => &[(0, 1), (0, 3), (1, 2), (2, 3)],
            Pattern::C4Complement => &[(0, 2), (1, 3)],
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::C5 => &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)],
            Pattern::ThreeSun => &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 5),
                (2, 4),
                (2, 5),
            ],
            Pattern::Chair => &[(0, 1), (1, 2), (2, 3), (2, 4)],
            Pattern::CoChair => &[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (3, 4)],
        }
    }

    pub fn graph(self) -> Graph {
        Graph::new(self.order(), self.edges().iter().copied())
            .expect("pattern edge lists are valid")
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown pattern '{}'", s)))
    }
}

/// Patterns whose absence characterizes threshold graphs.
pub const THRESHOLD_PATTERNS: [Pattern; 3] = [Pattern::C4, Pattern::C4Complement, Pattern::P4];

/// Patterns whose absence characterizes generalized combs.
pub const COMB_PATTERNS: [Pattern; 6] = [
    Pattern::C4,
    Pattern::C4Complement,
    Pattern::C5,
    Pattern::ThreeSun,
    Pattern::Chair,
    Pattern::CoChair,
];

/// Patterns whose absence characterizes the target class (a generalized comb
/// plus an optional fully attached five-cycle).
pub const TARGET_PATTERNS: [Pattern; 5] = [
    Pattern::C4,
    Pattern::C4Complement,
    Pattern::ThreeSun,
    Pattern::Chair,
    Pattern::CoChair,
];

/// An induced occurrence of a forbidden pattern: `vertices[i]` is the image
/// of pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
}

/// Find the lexicographically least induced embedding of `h` into `g`, as a
/// map from `h` vertices to `g` vertices. The embedding is exact: pairs of
/// `h` vertices are adjacent if and only if their images are.
pub fn find_induced_subgraph(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let k = h.order();
    if k > g.order() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let mut map = vec![0usize; k];
    let mut used = 0u64;
    // cand[i]: remaining candidates for position i given map[..i].
    let mut cand = vec![0u64; k];
    cand[0] = g.vertex_mask();
    let mut i = 0usize;
    loop {
        match BitIter(cand[i]).next() {
            Some(v) => {
                cand[i] &= !bit(v);
                map[i] = v;
                if i + 1 == k {
                    return Some(map);
                }
                used |= bit(v);
                let mut next = g.vertex_mask() & !used;
                for j in 0..=i {
                    let m = if h.has_edge(j, i + 1) {
                        g.neighbors_mask(map[j])
                    } else {
                        !g.neighbors_mask(map[j])
                    };
                    next &= m;
                }
                i += 1;
                cand[i] = next;
            }
            None => {
                if i == 0 {
                    return None;
                }
                i -= 1;
                used &= !bit(map[i]);
            }
        }
    }
}

/// Find the lexicographically least induced occurrence of `pattern` in `g`.
pub fn find_induced(g: &Graph, pattern: Pattern) -> Option<PatternWitness> {
    find_induced_subgraph(g, &pattern.graph())
        .map(|vertices| PatternWitness { pattern, vertices })
}

/// Find the first occurrence of any of `patterns` in `g`, trying patterns in
/// the given order.
pub fn find_any_induced(g: &Graph, patterns: &[Pattern]) -> Option<PatternWitness> {
    patterns.iter().find_map(|&p| find_induced(g, p))
}

/// Whether `g` contains none of `patterns` as an induced subgraph.
pub fn is_free_of(g: &Graph, patterns: &[Pattern]) -> bool {
    find_any_induced(g, patterns).is_none()
}

use thiserror::Error;

/// Errors raised across the crate.
///
/// `Inconsistency` is reserved for conditions the underlying theory rules
/// out: hitting one means either an internal bug or a genuine falsification
/// of a claimed theorem, and the message carries the evidence. It is never
/// used for plain bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {order} exceeds the supported maximum of 64")]
    OrderTooLarge { order: usize },

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {vertex} is not allowed")]
    LoopEdge { vertex: usize },

    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("duplicate arc {u}->{v}")]
    DuplicateArc { u: usize, v: usize },

    #[error("arcs {u}->{v} and {v}->{u} form a digon, which oriented graphs forbid")]
    Digon { u: usize, v: usize },

    #[error("vertices {u} and {v} are adjacent, not a missing edge")]
    NotMissingEdge { u: usize, v: usize },

    #[error("arc {u}->{v} is not present")]
    NoSuchArc { u: usize, v: usize },

    #[error("arc {u}->{v} is not a backward arc of the given order")]
    NotBackwardArc { u: usize, v: usize },

    #[error("vertex list contains duplicates: vertex {vertex} repeated")]
    DuplicateVertex { vertex: usize },

    #[error("claimed stable side contains the edge {u}-{v}")]
    SideNotStable { u: usize, v: usize },

    #[error("claimed clique side misses the edge {u}-{v}")]
    SideNotClique { u: usize, v: usize },

    #[error("sides are not a partition of the vertex set: vertex {vertex} is {problem}")]
    NotPartition { vertex: usize, problem: &'static str },

    #[error("order {order} exceeds the exact-solver cap of {cap}; raise the cap or use the local solver")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("{pairs} orientable pairs exceed the exhaustive-enumeration cap of {cap}")]
    TooManyPairs { pairs: usize, cap: usize },

    #[error("instance has isolated vertices {vertices:?}, which no orientation can make whole")]
    IsolatedVertices { vertices: Vec<usize> },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing graph is not in the supported class: {0}")]
    ClassRejected(String),

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),

    #[error("construction falsified a claimed property: {summary}\nreproducer: {reproducer}")]
    Falsified {
        summary: String,
        /// Self-contained JSON reproducer: the instance plus the full
        /// construction trace up to the failure.
        reproducer: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

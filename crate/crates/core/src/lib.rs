//! Constructive second-neighborhood machinery for oriented graphs whose
//! missing graph (the complement of the underlying adjacency) avoids a fixed
//! family of five small induced subgraphs.
//!
//! The crate provides, bottom to top:
//!
//! * [`graph`]: undirected graphs and oriented graphs on at most 64 vertices,
//!   with second out-neighborhoods and the second-neighborhood property.
//! * [`io`]: text edge-list and JSON encodings for both graph types.
//! * [`patterns`]: the fixed forbidden-pattern library and induced-subgraph
//!   search.
//! * [`enumerate`]: canonical enumeration of unlabeled graphs of small order.
//! * [`recognition`]: certified recognizers for threshold graphs, generalized
//!   combs, and the target class (comb plus an optional fully attached
//!   five-cycle), each returning a decomposition or a concrete pattern
//!   witness.
//! * [`dependency`]: missing edges, the losing relation, the dependency
//!   digraph over missing edges, good edges, and convenient orientations.
//! * [`median`]: exact and local median orders of oriented graphs, the
//!   feedback property, and feed vertices.
//! * [`engine`]: the staged completion of an oriented graph to a tournament
//!   and the constructive second-neighborhood witness extraction, with a
//!   brute-force witness finder as independent oracle.
//! * [`generate`]: parameterized generators for threshold graphs, generalized
//!   combs, and target-class instances, plus orientation enumeration over a
//!   prescribed missing graph.
//!
//! All algorithms are deterministic: every choice point is resolved
//! lexicographically, and randomized sampling is driven by caller-provided
//! seeds.

pub mod dependency;
pub mod engine;
pub mod enumerate;
mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod median;
pub mod patterns;
pub mod recognition;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

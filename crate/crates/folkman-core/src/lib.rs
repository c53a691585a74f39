//! Exhaustive-search engine for modified vertex Folkman numbers.
//!
//! The crate decides vertex arrowing relations `G -v-> (a_1,...,a_s)` and
//! their universal form `G -v-> m|p`, enumerates the maximal and `(+K_t)`
//! members of the classes `H~(m|p; q; n)` by independent-vertex extension
//! and edge-removal closure, and orchestrates the staged emptiness runs
//! that pin down `wFv(m|6; m-1)`.

pub mod arrowing;
pub mod canon;
pub mod g6;
pub mod graph;
pub mod pipeline;
pub mod search;

pub use arrowing::{ArrowError, ArrowSpec, ArrowTuple};
pub use canon::Certificate;
pub use graph::{Graph, GraphError, VertexSet};
pub use search::{AlphaMode, ExtensionJob};

use thiserror::Error;

use crate::graph::{Color, Vertex};

/// Errors raised by graph construction and graph queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("edge ({u}, {v}) with color {color} is not in the graph")]
    EdgeNotInGraph { u: Vertex, v: Vertex, color: Color },
    #[error("no edge joins {0} and {1}")]
    NoSuchEdge(Vertex, Vertex),
    #[error("color class {0} is not a star forest")]
    NotStarForest(Color),
}

pub mod o1p;
pub mod twobp;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EmbedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("order must list every live vertex exactly once")]
    MalformedOrder,
    #[error("{} edge(s) crossed more than once, first is ({},{}) with {} crossings", .0.len(), .0[0].0.0, .0[0].0.1, .0[0].1)]
    CrossingOverload(Vec<((Vertex, Vertex), usize)>),
    #[error("rotation at vertex {0} does not list exactly its incident edges")]
    RotationMismatch(Vertex),
    #[error("component has {vertices} vertices, {edges} edges, {faces} faces; not a planar embedding")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("face walk does not match any traced face")]
    FaceWalkMismatch,
    #[error("vertex {0} lies on neither designated face")]
    UncoveredVertex(Vertex),
    #[error("every vertex is shared between the two faces; maximum non-shared degree undefined")]
    AllVerticesShared,
    #[error("suppression of {v} requires its neighbors {u}, {w} to be non-adjacent")]
    SuppressionNeedsNonEdge { v: Vertex, u: Vertex, w: Vertex },
    #[error("edge ({0},{1}) not present")]
    EdgeNotPresent(Vertex, Vertex),
}

/// Result of suppressing a degree-2 vertex in an embedding.
///
/// `class_valid` reports whether the edited drawing still belongs to the
/// class; callers treat `false` as "this reduction is not applicable here"
/// rather than as an error.
#[derive(Debug, Clone)]
pub struct Suppression<E> {
    pub embedding: E,
    pub class_valid: bool,
    pub added_edge: (Vertex, Vertex),
}

/// Common surface of the two embedding types: the solver and the reduction
/// rules edit embeddings only through this trait.
pub trait Embedding: Clone {
    fn graph(&self) -> &Graph;

    /// Removes a vertex and keeps the embedding structure consistent.
    fn delete_vertex(&self, v: Vertex) -> Result<Self, EmbedError>;

    /// Removes a degree-2 vertex, joining its neighbors by a new edge routed
    /// where the vertex used to sit. Fails if the neighbors are adjacent.
    fn suppress_degree2(&self, v: Vertex) -> Result<Suppression<Self>, EmbedError>;

    fn delete_vertices(&self, vs: &[Vertex]) -> Result<Self, EmbedError> {
        let mut e = self.clone();
        for &v in vs {
            e = e.delete_vertex(v)?;
        }
        Ok(e)
    }
}

use crate::embed::{EmbedError, Embedding, Suppression};
use crate::graph::{Graph, Vertex};

/// Outer-1-planar embedding: all vertices on a circle in the given cyclic
/// order, edges drawn as chords. Crossings are not stored; two edges cross
/// exactly when their endpoints interleave in the order, and the drawing is
/// valid when no edge is crossed twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterOnePlanarEmbedding {
    graph: Graph,
    order: Vec<Vertex>,
}

fn interleaves(pos: &[usize], n: usize, e1: (Vertex, Vertex), e2: (Vertex, Vertex)) -> bool {
    let (a, b) = e1;
    let (c, d) = e2;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let rel = |x: Vertex| (pos[x] + n - pos[a]) % n;
    let m = rel(b);
    let q = rel(c);
    let r = rel(d);
    (q < m) != (r < m)
}

impl OuterOnePlanarEmbedding {
    pub fn new(graph: Graph, order: Vec<Vertex>) -> Result<Self, EmbedError> {
        let emb = OuterOnePlanarEmbedding { graph, order };
        emb.validate()?;
        Ok(emb)
    }

    /// The `n`-cycle (or single vertex / single edge for small `n`) on the
    /// natural circular order.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n == 2 {
            g.add_edge(0, 1).unwrap();
        } else if n > 2 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n).unwrap();
            }
        }
        OuterOnePlanarEmbedding {
            graph: g,
            order: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.graph.n_slots()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Number of edges crossing each edge, in `self.graph.edges()` order.
    pub fn crossing_counts(&self) -> Vec<((Vertex, Vertex), usize)> {
        let edges: Vec<_> = self.graph.edges().collect();
        let pos = self.positions();
        let n = self.order.len();
        let mut counts = vec![0usize; edges.len()];
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if interleaves(&pos, n, edges[i], edges[j]) {
                    counts[i] += 1;
                    counts[j] += 1;
                }
            }
        }
        edges.into_iter().zip(counts).collect()
    }

    pub fn validate(&self) -> Result<(), EmbedError> {
        let mut seen = vec![false; self.graph.n_slots()];
        for &v in &self.order {
            if v >= seen.len() || !self.graph.is_alive(v) || seen[v] {
                return Err(EmbedError::MalformedOrder);
            }
            seen[v] = true;
        }
        if self.order.len() != self.graph.live_count() {
            return Err(EmbedError::MalformedOrder);
        }
        let overloaded: Vec<_> = self
            .crossing_counts()
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .collect();
        if overloaded.is_empty() {
            Ok(())
        } else {
            Err(EmbedError::CrossingOverload(overloaded))
        }
    }
}

impl Embedding for OuterOnePlanarEmbedding {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Deleting a vertex only removes chords, so the result stays valid.
    fn delete_vertex(&self, v: Vertex) -> Result<Self, EmbedError> {
        let graph = self.graph.delete_vertex(v)?;
        let order = self.order.iter().copied().filter(|&u| u != v).collect();
        Ok(OuterOnePlanarEmbedding { graph, order })
    }

    fn suppress_degree2(&self, v: Vertex) -> Result<Suppression<Self>, EmbedError> {
        let (graph, added) = self.graph.suppress_vertex(v)?;
        let (u, w) = match added {
            Some(e) => e,
            None => {
                let mut it = self.graph.neighbors(v);
                let u = it.next().unwrap();
                let w = it.next().unwrap();
                return Err(EmbedError::SuppressionNeedsNonEdge { v, u, w });
            }
        };
        let order = self.order.iter().copied().filter(|&x| x != v).collect();
        let embedding = OuterOnePlanarEmbedding { graph, order };
        let class_valid = embedding.validate().is_ok();
        Ok(Suppression {
            embedding,
            class_valid,
            added_edge: (u, w),
        })
    }
}

use std::collections::BTreeSet;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    OutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(Vertex, Vertex),
    #[error("edge ({0}, {1}) not present")]
    NoSuchEdge(Vertex, Vertex),
    #[error("vertex {0} is not live")]
    DeadVertex(Vertex),
    #[error("vertex {0} does not have degree 2")]
    NotDegreeTwo(Vertex),
}

/// Simple undirected graph over a fixed slot range `0..n_slots`.
///
/// Vertices are never renumbered: deleting a vertex marks its slot dead and
/// detaches it, so identifiers stay stable across a whole reduction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
    live: usize,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            alive: vec![true; n],
            live: n,
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n_slots(&self) -> usize {
        self.adj.len()
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    fn check_live(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n_slots() {
            return Err(GraphError::OutOfRange(v, self.n_slots()));
        }
        if !self.alive[v] {
            return Err(GraphError::DeadVertex(v));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::EdgeExists(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_live(u)?;
        self.check_live(v)?;
        if !self.adj[u].remove(&v) {
            return Err(GraphError::NoSuchEdge(u.min(v), u.max(v)));
        }
        self.adj[v].remove(&u);
        self.edges -= 1;
        Ok(())
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n_slots() && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    /// Live vertices in increasing slot order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n_slots()).filter(move |&v| self.alive[v])
    }

    /// Live edges as ordered pairs (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }

    /// Deletes a live vertex, detaching all incident edges.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_live(v)?;
        let mut g = self.clone();
        for u in self.adj[v].iter().copied().collect::<Vec<_>>() {
            g.adj[u].remove(&v);
            g.edges -= 1;
        }
        g.adj[v].clear();
        g.alive[v] = false;
        g.live -= 1;
        Ok(g)
    }

    pub fn delete_vertices(&self, vs: &[Vertex]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &v in vs {
            g = g.delete_vertex(v)?;
        }
        Ok(g)
    }

    /// Removes a degree-2 vertex and joins its two neighbors.
    ///
    /// Returns the new graph and the edge that was added, or `None` when the
    /// neighbors were already adjacent.
    pub fn suppress_vertex(&self, v: Vertex) -> Result<(Graph, Option<(Vertex, Vertex)>), GraphError> {
        self.check_live(v)?;
        if self.degree(v) != 2 {
            return Err(GraphError::NotDegreeTwo(v));
        }
        let mut it = self.neighbors(v);
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        let mut g = self.delete_vertex(v)?;
        if g.adjacent(a, b) {
            Ok((g, None))
        } else {
            g.add_edge(a, b)?;
            Ok((g, Some((a.min(b), a.max(b)))))
        }
    }

    /// Connected components over live vertices, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n_slots();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

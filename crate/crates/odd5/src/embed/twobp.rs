use std::collections::{BTreeSet, HashMap};

use crate::embed::{EmbedError, Embedding, Suppression};
use crate::graph::{Graph, Vertex};

/// Closed facial walk of a rotation system, stored as the cyclic sequence of
/// directed-edge sources. A cut vertex may appear several times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk(Vec<Vertex>);

impl FaceWalk {
    pub fn new(walk: Vec<Vertex>) -> Self {
        FaceWalk(walk)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn walk(&self) -> &[Vertex] {
        &self.0
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.0.iter().copied().collect()
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn contains_directed(&self, u: Vertex, v: Vertex) -> bool {
        self.directed_edges().any(|e| e == (u, v))
    }

    /// Lexicographically smallest rotation; walks are compared up to cyclic
    /// rotation but never reversal (orientation is part of the embedding).
    pub fn canonical(&self) -> Vec<Vertex> {
        let n = self.0.len();
        let mut best: Option<Vec<Vertex>> = None;
        for s in 0..n {
            let mut cand = Vec::with_capacity(n);
            cand.extend_from_slice(&self.0[s..]);
            cand.extend_from_slice(&self.0[..s]);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.unwrap_or_default()
    }

    pub fn matches_cyclically(&self, walk: &[Vertex]) -> bool {
        self.0.len() == walk.len() && self.canonical() == FaceWalk(walk.to_vec()).canonical()
    }
}

/// All facial walks of the rotation system: orbits of directed edges under
/// (u,v) -> (v, succ_v(u)), where succ_v(u) is the neighbor after u in the
/// counterclockwise rotation at v.
pub fn trace_faces(graph: &Graph, rotation: &[Vec<Vertex>]) -> Vec<FaceWalk> {
    let succ = |v: Vertex, u: Vertex| -> Vertex {
        let rot = &rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("rotation consistent");
        rot[(i + 1) % rot.len()]
    };
    let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut faces = Vec::new();
    for u in graph.vertices() {
        for &v in &rotation[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                walk.push(a);
                seen.insert((a, b));
                let c = succ(b, a);
                a = b;
                b = c;
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(FaceWalk(walk));
        }
    }
    faces
}

/// Checks Euler's relation V - E + F = 2 on every connected component with
/// at least one edge. Rotation systems of non-planar embeddings trace too
/// few faces and fail this.
pub fn euler_ok(graph: &Graph, faces: &[FaceWalk]) -> bool {
    let comps = graph.components();
    let mut comp_of = vec![usize::MAX; graph.n_slots()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut face_count = vec![0usize; comps.len()];
    for f in faces {
        face_count[comp_of[f.walk()[0]]] += 1;
    }
    comps.iter().enumerate().all(|(i, comp)| {
        let e: usize = comp.iter().map(|&v| graph.degree(v)).sum::<usize>() / 2;
        e == 0 || comp.len() + face_count[i] == e + 2
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Chordal,
    Boundary,
    Interconnected,
    Other,
}

/// Planar embedding given by a rotation system, with two designated boundary
/// regions (outer and inner) jointly covering every non-isolated vertex.
///
/// Each region is a set of facial walks: regions start out as single faces
/// but vertex deletions can split a face into several orbits, so the
/// designation is tracked as a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBoundaryEmbedding {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    outer: Vec<FaceWalk>,
    inner: Vec<FaceWalk>,
}

impl TwoBoundaryEmbedding {
    /// Builds and validates an embedding from single face walks, matching
    /// them against the traced faces up to cyclic rotation.
    pub fn new(
        graph: Graph,
        rotation: Vec<Vec<Vertex>>,
        outer_walk: &[Vertex],
        inner_walk: Option<&[Vertex]>,
    ) -> Result<Self, EmbedError> {
        check_rotation(&graph, &rotation)?;
        let faces = trace_faces(&graph, &rotation);
        let find = |walk: &[Vertex]| -> Result<FaceWalk, EmbedError> {
            faces
                .iter()
                .find(|f| f.matches_cyclically(walk))
                .cloned()
                .ok_or(EmbedError::FaceWalkMismatch)
        };
        let outer = vec![find(outer_walk)?];
        let inner = match inner_walk {
            Some(w) => vec![find(w)?],
            None => Vec::new(),
        };
        let emb = TwoBoundaryEmbedding {
            graph,
            rotation,
            outer,
            inner,
        };
        emb.validate()?;
        Ok(emb)
    }

    /// Builds an embedding from already-traced walks (generators construct
    /// these directly). Still fully validated.
    pub fn from_traced(
        graph: Graph,
        rotation: Vec<Vec<Vertex>>,
        outer: Vec<FaceWalk>,
        inner: Vec<FaceWalk>,
    ) -> Result<Self, EmbedError> {
        let emb = TwoBoundaryEmbedding {
            graph,
            rotation,
            outer,
            inner,
        };
        emb.validate()?;
        Ok(emb)
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn outer_walks(&self) -> &[FaceWalk] {
        &self.outer
    }

    pub fn inner_walks(&self) -> &[FaceWalk] {
        &self.inner
    }

    pub fn outer_vertices(&self) -> BTreeSet<Vertex> {
        self.outer.iter().flat_map(|f| f.vertices()).collect()
    }

    pub fn inner_vertices(&self) -> BTreeSet<Vertex> {
        self.inner.iter().flat_map(|f| f.vertices()).collect()
    }

    pub fn shared_vertices(&self) -> BTreeSet<Vertex> {
        self.outer_vertices()
            .intersection(&self.inner_vertices())
            .copied()
            .collect()
    }

    /// Maximum degree over vertices that are not shared between the two
    /// boundary regions.
    pub fn tilde_delta(&self) -> Result<usize, EmbedError> {
        let shared = self.shared_vertices();
        self.graph
            .vertices()
            .filter(|v| !shared.contains(v))
            .map(|v| self.graph.degree(v))
            .max()
            .ok_or(EmbedError::AllVerticesShared)
    }

    pub fn classify_edge(&self, u: Vertex, v: Vertex) -> Result<EdgeClass, EmbedError> {
        if !self.graph.adjacent(u, v) {
            return Err(EmbedError::EdgeNotPresent(u, v));
        }
        let consecutive = |walks: &[FaceWalk]| {
            walks
                .iter()
                .any(|f| f.contains_directed(u, v) || f.contains_directed(v, u))
        };
        if consecutive(&self.outer) || consecutive(&self.inner) {
            return Ok(EdgeClass::Boundary);
        }
        let out = self.outer_vertices();
        let inn = self.inner_vertices();
        if (out.contains(&u) && out.contains(&v)) || (inn.contains(&u) && inn.contains(&v)) {
            return Ok(EdgeClass::Chordal);
        }
        let shared: BTreeSet<_> = out.intersection(&inn).copied().collect();
        let strict_out = |x: Vertex| out.contains(&x) && !shared.contains(&x);
        let strict_in = |x: Vertex| inn.contains(&x) && !shared.contains(&x);
        if (strict_out(u) && strict_in(v)) || (strict_out(v) && strict_in(u)) {
            return Ok(EdgeClass::Interconnected);
        }
        Ok(EdgeClass::Other)
    }

    pub fn validate(&self) -> Result<(), EmbedError> {
        check_rotation(&self.graph, &self.rotation)?;
        let faces = trace_faces(&self.graph, &self.rotation);
        if !euler_ok(&self.graph, &faces) {
            let comps = self.graph.components();
            let bad = comps
                .iter()
                .find(|comp| {
                    let e: usize = comp.iter().map(|&v| self.graph.degree(v)).sum::<usize>() / 2;
                    let f = faces
                        .iter()
                        .filter(|fw| comp.binary_search(&fw.walk()[0]).is_ok())
                        .count();
                    e > 0 && comp.len() + f != e + 2
                })
                .expect("euler_ok failed on some component");
            let e: usize = bad.iter().map(|&v| self.graph.degree(v)).sum::<usize>() / 2;
            let f = faces
                .iter()
                .filter(|fw| bad.binary_search(&fw.walk()[0]).is_ok())
                .count();
            return Err(EmbedError::EulerViolation {
                vertices: bad.len(),
                edges: e,
                faces: f,
            });
        }
        for walk in self.outer.iter().chain(&self.inner) {
            if !faces.iter().any(|f| f.matches_cyclically(walk.walk())) {
                return Err(EmbedError::FaceWalkMismatch);
            }
        }
        let covered: BTreeSet<Vertex> = self
            .outer_vertices()
            .union(&self.inner_vertices())
            .copied()
            .collect();
        for v in self.graph.vertices() {
            if self.graph.degree(v) > 0 && !covered.contains(&v) {
                return Err(EmbedError::UncoveredVertex(v));
            }
        }
        Ok(())
    }

    /// Designation mask per directed edge: bit 0 = outer, bit 1 = inner.
    fn designation_map(&self) -> HashMap<(Vertex, Vertex), u8> {
        let mut map = HashMap::new();
        for f in &self.outer {
            for e in f.directed_edges() {
                *map.entry(e).or_insert(0) |= 1;
            }
        }
        for f in &self.inner {
            for e in f.directed_edges() {
                *map.entry(e).or_insert(0) |= 2;
            }
        }
        map
    }

    /// Rebuilds the designated regions after an edit: every new face that
    /// inherits an outer-designated directed edge becomes outer, likewise
    /// for inner. A face inheriting both (the regions merged) becomes outer.
    fn redesignate(
        graph: Graph,
        rotation: Vec<Vec<Vertex>>,
        map: &HashMap<(Vertex, Vertex), u8>,
    ) -> Result<TwoBoundaryEmbedding, EmbedError> {
        let faces = trace_faces(&graph, &rotation);
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        for f in faces {
            let mut mask = 0u8;
            for e in f.directed_edges() {
                mask |= map.get(&e).copied().unwrap_or(0);
            }
            if mask & 1 != 0 {
                outer.push(f);
            } else if mask & 2 != 0 {
                inner.push(f);
            }
        }
        let emb = TwoBoundaryEmbedding {
            graph,
            rotation,
            outer,
            inner,
        };
        emb.validate()?;
        Ok(emb)
    }
}

impl Embedding for TwoBoundaryEmbedding {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn delete_vertex(&self, v: Vertex) -> Result<Self, EmbedError> {
        let graph = self.graph.delete_vertex(v)?;
        let mut rotation = self.rotation.clone();
        for u in self.graph.neighbors(v) {
            rotation[u].retain(|&x| x != v);
        }
        rotation[v].clear();
        Self::redesignate(graph, rotation, &self.designation_map())
    }

    fn suppress_degree2(&self, v: Vertex) -> Result<Suppression<Self>, EmbedError> {
        let (graph, added) = self.graph.suppress_vertex(v)?;
        let (u, w) = match added {
            Some(e) => e,
            None => {
                let mut it = self.graph.neighbors(v);
                let a = it.next().unwrap();
                let b = it.next().unwrap();
                return Err(EmbedError::SuppressionNeedsNonEdge { v, u: a, w: b });
            }
        };
        let mut rotation = self.rotation.clone();
        for x in rotation[u].iter_mut() {
            if *x == v {
                *x = w;
            }
        }
        for x in rotation[w].iter_mut() {
            if *x == v {
                *x = u;
            }
        }
        rotation[v].clear();
        // The new edge u-w runs where the path u-v-w ran, so each direction
        // inherits the designation of the walk segment it replaces.
        let mut map = self.designation_map();
        let seg = |a: (Vertex, Vertex), b: (Vertex, Vertex), m: &HashMap<_, u8>| {
            m.get(&a).copied().unwrap_or(0) | m.get(&b).copied().unwrap_or(0)
        };
        let uw = seg((u, v), (v, w), &map);
        let wu = seg((w, v), (v, u), &map);
        if uw != 0 {
            map.insert((u, w), uw);
        }
        if wu != 0 {
            map.insert((w, u), wu);
        }
        let embedding = Self::redesignate(graph, rotation, &map)?;
        Ok(Suppression {
            embedding,
            class_valid: true,
            added_edge: (u, w),
        })
    }
}

fn check_rotation(graph: &Graph, rotation: &[Vec<Vertex>]) -> Result<(), EmbedError> {
    if rotation.len() != graph.n_slots() {
        return Err(EmbedError::RotationMismatch(rotation.len().min(graph.n_slots())));
    }
    for v in 0..graph.n_slots() {
        if !graph.is_alive(v) {
            if !rotation[v].is_empty() {
                return Err(EmbedError::RotationMismatch(v));
            }
            continue;
        }
        let listed: BTreeSet<Vertex> = rotation[v].iter().copied().collect();
        if listed.len() != rotation[v].len() || &listed != graph.neighbor_set(v) {
            return Err(EmbedError::RotationMismatch(v));
        }
    }
    Ok(())
}

/// Picks a canonical face designation for a freshly traced rotation system:
/// the first single face covering every non-isolated vertex, else the first
/// pair of faces that does.
pub fn designate_faces(graph: &Graph, faces: &[FaceWalk]) -> Option<(usize, Option<usize>)> {
    let need: BTreeSet<Vertex> = graph.vertices().filter(|&v| graph.degree(v) > 0).collect();
    let sets: Vec<BTreeSet<Vertex>> = faces.iter().map(|f| f.vertices()).collect();
    for (i, s) in sets.iter().enumerate() {
        if need.is_subset(s) {
            return Some((i, None));
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if need.iter().all(|v| sets[i].contains(v) || sets[j].contains(v)) {
                return Some((i, Some(j)));
            }
        }
    }
    None
}

//! The two exceptional 2-boundary families the reduction rules cannot
//! touch: prisms (3-regular, two n-cycles joined by a matching) and
//! antiprisms (4-regular, two n-cycles joined by a zigzag). Both are
//! recognized structurally and colored by closed formulas.

use crate::coloring::{verify_odd, Color, Coloring};
use crate::embed::twobp::{trace_faces, TwoBoundaryEmbedding};
use crate::graph::{Graph, Vertex};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    Prism(usize),
    Antiprism(usize),
}

/// A recognized prism or antiprism together with the relabeling onto the
/// canonical vertex ids: `iso[i]` is the actual vertex playing canonical
/// role `i` (ring vertices `0..n`, then partner ring `n..2n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialGraph {
    pub kind: SpecialKind,
    pub iso: Vec<Vertex>,
}

/// Two n-cycles u_0..u_{n-1} (ids 0..n) and v_0..v_{n-1} (ids n..2n) joined
/// by the perfect matching u_i v_i.
pub fn prism_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        g.add_edge(i, j).unwrap();
        g.add_edge(n + i, n + j).unwrap();
        g.add_edge(i, n + i).unwrap();
    }
    g
}

/// Two n-cycles joined by a zigzag: v_i is adjacent to u_{i-1} and u_i.
pub fn antiprism_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        g.add_edge(i, j).unwrap();
        g.add_edge(n + i, n + j).unwrap();
        g.add_edge(i, n + i).unwrap();
        g.add_edge(i, n + j).unwrap();
    }
    g
}

fn find_face_by_vertices(
    graph: &Graph,
    rotation: &[Vec<Vertex>],
    want: &std::collections::BTreeSet<Vertex>,
) -> crate::embed::twobp::FaceWalk {
    trace_faces(graph, rotation)
        .into_iter()
        .find(|f| &f.vertices() == want && f.len() == want.len())
        .expect("canonical construction has the expected boundary face")
}

/// Annulus drawing of the prism: outer ring outside, partner ring inside.
pub fn prism_embedding(n: usize) -> TwoBoundaryEmbedding {
    let g = prism_graph(n);
    let mut rotation = vec![Vec::new(); 2 * n];
    for i in 0..n {
        let (nx, pv) = ((i + 1) % n, (i + n - 1) % n);
        rotation[i] = vec![nx, n + i, pv];
        rotation[n + i] = vec![i, n + nx, n + pv];
    }
    let outer = find_face_by_vertices(&g, &rotation, &(0..n).collect());
    let inner = find_face_by_vertices(&g, &rotation, &(n..2 * n).collect());
    TwoBoundaryEmbedding::from_traced(g, rotation, vec![outer], vec![inner])
        .expect("prism embedding is valid")
}

/// Annulus drawing of the antiprism.
pub fn antiprism_embedding(n: usize) -> TwoBoundaryEmbedding {
    let g = antiprism_graph(n);
    let mut rotation = vec![Vec::new(); 2 * n];
    for i in 0..n {
        let (nx, pv) = ((i + 1) % n, (i + n - 1) % n);
        rotation[i] = vec![nx, n + nx, n + i, pv];
        rotation[n + i] = vec![i, n + nx, n + pv, pv];
    }
    let outer = find_face_by_vertices(&g, &rotation, &(0..n).collect());
    let inner = find_face_by_vertices(&g, &rotation, &(n..2 * n).collect());
    TwoBoundaryEmbedding::from_traced(g, rotation, vec![outer], vec![inner])
        .expect("antiprism embedding is valid")
}

fn only<I: Iterator<Item = Vertex>>(mut it: I) -> Option<Vertex> {
    let x = it.next()?;
    if it.next().is_some() {
        None
    } else {
        Some(x)
    }
}

fn recognize_prism(g: &Graph) -> Option<SpecialGraph> {
    let total = g.live_count();
    if total < 6 || total % 2 != 0 {
        return None;
    }
    let n = total / 2;
    if g.vertices().any(|v| g.degree(v) != 3) || g.edge_count() != 3 * n {
        return None;
    }
    let u1 = g.vertices().next().unwrap();
    for v1 in g.neighbors(u1) {
        for u2 in g.neighbors(u1).filter(|&x| x != v1) {
            for v2 in g.neighbors(v1).filter(|&x| x != u1 && g.adjacent(x, u2)) {
                if let Some(iso) = walk_prism(g, n, u1, v1, u2, v2) {
                    return Some(SpecialGraph {
                        kind: SpecialKind::Prism(n),
                        iso,
                    });
                }
            }
        }
    }
    None
}

fn walk_prism(
    g: &Graph,
    n: usize,
    u1: Vertex,
    v1: Vertex,
    u2: Vertex,
    v2: Vertex,
) -> Option<Vec<Vertex>> {
    let mut us = vec![u1, u2];
    let mut vs = vec![v1, v2];
    for _ in 2..n {
        let (up, uc) = (us[us.len() - 2], us[us.len() - 1]);
        let (vp, vc) = (vs[vs.len() - 2], vs[vs.len() - 1]);
        let un = only(g.neighbors(uc).filter(|&x| x != up && x != vc))?;
        let vn = only(g.neighbors(vc).filter(|&x| x != vp && x != uc))?;
        if !g.adjacent(un, vn) {
            return None;
        }
        us.push(un);
        vs.push(vn);
    }
    if !g.adjacent(us[n - 1], u1) || !g.adjacent(vs[n - 1], v1) {
        return None;
    }
    let mut all: Vec<Vertex> = us.iter().chain(vs.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 2 * n {
        return None;
    }
    us.extend(vs);
    Some(us)
}

fn recognize_antiprism(g: &Graph) -> Option<SpecialGraph> {
    let total = g.live_count();
    if total < 6 || total % 2 != 0 {
        return None;
    }
    let n = total / 2;
    if g.vertices().any(|v| g.degree(v) != 4) || g.edge_count() != 4 * n {
        return None;
    }
    let u1 = g.vertices().next().unwrap();
    // Canonically u_1 is adjacent to v_1 and v_2 with v_1 v_2 an edge, and
    // u_2 is a common neighbor of u_1 and v_2.
    for v1 in g.neighbors(u1) {
        for v2 in g.neighbors(u1).filter(|&x| x != v1 && g.adjacent(x, v1)) {
            for u2 in g
                .neighbors(u1)
                .filter(|&x| x != v1 && x != v2 && g.adjacent(x, v2))
            {
                if let Some(iso) = walk_antiprism(g, n, u1, v1, v2, u2) {
                    return Some(SpecialGraph {
                        kind: SpecialKind::Antiprism(n),
                        iso,
                    });
                }
            }
        }
    }
    None
}

fn walk_antiprism(
    g: &Graph,
    n: usize,
    u1: Vertex,
    v1: Vertex,
    v2: Vertex,
    u2: Vertex,
) -> Option<Vec<Vertex>> {
    let mut us = vec![u1, u2];
    let mut vs = vec![v1, v2];
    for _ in 2..n {
        let (up, uc) = (us[us.len() - 2], us[us.len() - 1]);
        let (vp, vc) = (vs[vs.len() - 2], vs[vs.len() - 1]);
        let vn = only(g.neighbors(vc).filter(|&x| x != vp && x != up && x != uc))?;
        let un = only(g.neighbors(uc).filter(|&x| x != up && x != vc && x != vn))?;
        if !g.adjacent(un, vn) {
            return None;
        }
        us.push(un);
        vs.push(vn);
    }
    if !g.adjacent(us[n - 1], u1) || !g.adjacent(vs[n - 1], v1) || !g.adjacent(vs[n - 1], us[n - 1])
    {
        return None;
    }
    let mut all: Vec<Vertex> = us.iter().chain(vs.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 2 * n {
        return None;
    }
    // Exact adjacency check against the canonical antiprism.
    let canon = antiprism_graph(n);
    let iso: Vec<Vertex> = us.iter().chain(vs.iter()).copied().collect();
    for (a, b) in canon.edges() {
        if !g.adjacent(iso[a], iso[b]) {
            return None;
        }
    }
    Some(iso)
}

/// Structural recognition of the two families, returning the relabeling.
pub fn recognize_special(g: &Graph) -> Option<SpecialGraph> {
    if !g.is_connected() {
        return None;
    }
    recognize_prism(g).or_else(|| recognize_antiprism(g))
}

/// Proper <=3-coloring of the canonical prism; all degrees are odd, so any
/// proper coloring is odd.
pub fn color_prism(n: usize) -> Coloring {
    assert!(n >= 3);
    let mut ring = vec![0u32; n];
    for (i, c) in ring.iter_mut().enumerate() {
        *c = 1 + (i % 2) as u32;
    }
    if n % 2 == 1 {
        ring[n - 1] = 3;
    }
    let mut tau = Coloring::new(if n % 2 == 0 { 2 } else { 3 }, 2 * n);
    for i in 0..n {
        tau.set(i, ring[i]);
        tau.set(n + i, ring[(i + 1) % n]);
    }
    let g = prism_graph(n);
    debug_assert!(verify_odd(&g, &tau).is_valid());
    tau
}

/// Odd coloring of the canonical antiprism: exactly 4 colors for even n,
/// exactly 5 for odd n >= 5. The n = 3 case has no clean pattern and is
/// delegated to the oracle.
pub fn color_antiprism(n: usize) -> Coloring {
    assert!(n >= 3);
    let g = antiprism_graph(n);
    if n == 3 {
        let (_, w) = oracle::chi_odd(&g);
        return w.expect("octahedron is colorable");
    }
    let mut tau = Coloring::new(if n % 2 == 0 { 4 } else { 5 }, 2 * n);
    if n % 2 == 0 {
        for i in 0..n {
            tau.set(i, 1 + (i % 2) as Color);
            tau.set(n + i, 3 + (i % 2) as Color);
        }
    } else {
        // 1-based ring pattern 4,5,4,5,...,4,5,3,4,5 (the lone 3 sits at
        // position n-2), partner ring 1,2,1,2,...,1,2,3.
        for j in 0..n {
            let i = j + 1;
            let c = match i {
                _ if i == n - 2 => 3,
                _ if i == n - 1 => 4,
                _ if i == n => 5,
                _ => 4 + ((i + 1) % 2) as Color,
            };
            tau.set(j, c);
        }
        for j in 0..n {
            let i = j + 1;
            tau.set(n + j, if i == n { 3 } else { 1 + ((i + 1) % 2) as Color });
        }
    }
    debug_assert!(verify_odd(&g, &tau).is_valid());
    tau
}

impl SpecialGraph {
    /// Colors the actual graph by pushing the canonical coloring through the
    /// recognition relabeling.
    pub fn color(&self, n_slots: usize) -> Coloring {
        let canonical = match self.kind {
            SpecialKind::Prism(n) => color_prism(n),
            SpecialKind::Antiprism(n) => color_antiprism(n),
        };
        let mut tau = Coloring::new(5, n_slots);
        for (idx, &actual) in self.iso.iter().enumerate() {
            tau.set(actual, canonical.get(idx).unwrap());
        }
        tau
    }
}

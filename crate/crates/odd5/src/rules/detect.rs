//! Shape finders. Each one enumerates every candidate binding, keeps those
//! whose structural predicate holds, and returns the lexicographically
//! smallest vertex tuple, so detection is deterministic by construction
//! rather than by iteration order.

use crate::config::Configuration;
use crate::embed::Embedding;
use crate::graph::{Graph, Vertex};

fn common_neighbors(g: &Graph, a: Vertex, b: Vertex) -> Vec<Vertex> {
    g.neighbors(a).filter(|&c| g.adjacent(c, b)).collect()
}

fn best(g: &Graph, cands: Vec<Configuration>) -> Option<Configuration> {
    cands
        .into_iter()
        .filter(|c| c.check(g))
        .min_by_key(|c| c.bound_vertices())
}

/// All triangles as sorted triples.
fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for c in common_neighbors(g, a, b) {
            if c > b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub(crate) fn find_degree1(g: &Graph) -> Option<(Vertex, Vertex)> {
    // v leads the tuple and determines u, so the first live hit is smallest.
    for v in g.vertices() {
        if g.degree(v) == 1 {
            let u = g.neighbors(v).next().unwrap();
            return Some((v, u));
        }
    }
    None
}

pub(crate) fn find_triangle_deg2(g: &Graph) -> Option<(Vertex, Vertex, Vertex)> {
    for v in g.vertices() {
        if g.degree(v) == 2 {
            let nbrs: Vec<Vertex> = g.neighbors(v).collect();
            let (u, w) = (nbrs[0].min(nbrs[1]), nbrs[0].max(nbrs[1]));
            if g.adjacent(u, w) {
                return Some((v, u, w));
            }
        }
    }
    None
}

/// Degree-2 vertex whose neighbors are non-adjacent and whose suppression
/// keeps the embedding inside its class.
pub(crate) fn find_path_deg2<E: Embedding>(emb: &E) -> Option<(Vertex, Vertex, Vertex)> {
    let g = emb.graph();
    for v in g.vertices() {
        if g.degree(v) != 2 {
            continue;
        }
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        let (u, w) = (nbrs[0].min(nbrs[1]), nbrs[0].max(nbrs[1]));
        if g.adjacent(u, w) {
            continue;
        }
        match emb.suppress_degree2(v) {
            Ok(s) if s.class_valid => return Some((v, u, w)),
            _ => continue,
        }
    }
    None
}

pub(crate) fn find_chorded_square(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for (a, b) in g.edges() {
        if g.degree(a) != 3 || g.degree(b) != 3 {
            continue;
        }
        let shared = common_neighbors(g, a, b);
        for (u, v) in [(a, b), (b, a)] {
            for &x in &shared {
                for &y in &shared {
                    if x != y {
                        cands.push(Configuration::D1 { u, x, v, y });
                    }
                }
            }
        }
    }
    best(g, cands)
}

pub(crate) fn find_deg3_two_odd(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for v in g.vertices() {
        if g.degree(v) != 3 {
            continue;
        }
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        for &x in &nbrs {
            for &y in &nbrs {
                if x == y || g.degree(x) % 2 == 0 || g.degree(y) % 2 == 0 {
                    continue;
                }
                let z = *nbrs.iter().find(|&&n| n != x && n != y).unwrap();
                cands.push(Configuration::D2 { v, x, y, z });
            }
        }
    }
    best(g, cands)
}

pub(crate) fn find_triangle_33(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for t in triangles(g) {
        for (u, v, w) in [
            (t[0], t[1], t[2]),
            (t[0], t[2], t[1]),
            (t[1], t[0], t[2]),
            (t[1], t[2], t[0]),
            (t[2], t[0], t[1]),
            (t[2], t[1], t[0]),
        ] {
            if g.degree(v) != 3 || g.degree(w) != 3 {
                continue;
            }
            let x = g.neighbors(v).find(|&n| n != u && n != w);
            let y = g.neighbors(w).find(|&n| n != u && n != v);
            if let (Some(x), Some(y)) = (x, y) {
                cands.push(Configuration::E2 { u, v, w, x, y });
            }
        }
    }
    best(g, cands)
}

pub(crate) fn find_adjacent_triangles(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for (a, b) in g.edges() {
        if g.degree(a) != 4 || g.degree(b) != 4 {
            continue;
        }
        let shared = common_neighbors(g, a, b);
        for (u, v) in [(a, b), (b, a)] {
            for &x in &shared {
                if g.degree(x) != 3 {
                    continue;
                }
                for &y in &shared {
                    if y == x || g.degree(y) % 2 == 0 {
                        continue;
                    }
                    let xp = g.neighbors(x).find(|&n| n != u && n != v);
                    let up = g.neighbors(u).find(|&n| n != x && n != v && n != y);
                    let vp = g.neighbors(v).find(|&n| n != x && n != u && n != y);
                    if let (Some(xp), Some(up), Some(vp)) = (xp, up, vp) {
                        cands.push(Configuration::G2 { x, u, v, y, xp, up, vp });
                    }
                }
            }
        }
    }
    best(g, cands)
}

pub(crate) fn find_triple_triangle(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for t in triangles(g) {
        for (v, x, y) in [
            (t[0], t[1], t[2]),
            (t[0], t[2], t[1]),
            (t[1], t[0], t[2]),
            (t[1], t[2], t[0]),
            (t[2], t[0], t[1]),
            (t[2], t[1], t[0]),
        ] {
            if g.degree(v) != 4 || g.degree(x) != 4 || g.degree(y) != 4 {
                continue;
            }
            for u in common_neighbors(g, x, v) {
                if g.degree(u) != 3 || u == y {
                    continue;
                }
                for w in common_neighbors(g, v, y) {
                    if w == u || w == x {
                        continue;
                    }
                    let xp = g.neighbors(x).find(|&n| n != v && n != y && n != u);
                    let yp = g.neighbors(y).find(|&n| n != v && n != x && n != w);
                    let up = g.neighbors(u).find(|&n| n != x && n != v);
                    if let (Some(xp), Some(yp), Some(up)) = (xp, yp, up) {
                        cands.push(Configuration::H2 { u, v, w, x, y, xp, yp, up });
                    }
                }
            }
        }
    }
    best(g, cands)
}

pub(crate) fn find_fan(g: &Graph) -> Option<Configuration> {
    let mut cands = Vec::new();
    for v in g.vertices() {
        if g.degree(v) != 5 {
            continue;
        }
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        for &y in &nbrs {
            if g.degree(y) != 3 {
                continue;
            }
            let arms: Vec<Vertex> = g.neighbors(y).filter(|&n| n != v).collect();
            for (x, z) in [(arms[0], arms[1]), (arms[1], arms[0])] {
                if !nbrs.contains(&x)
                    || !nbrs.contains(&z)
                    || g.degree(x) != 4
                    || g.degree(z) != 4
                {
                    continue;
                }
                for &u in &nbrs {
                    if u == x || u == y || u == z || !g.adjacent(u, x) {
                        continue;
                    }
                    for &w in &nbrs {
                        if w == u || w == x || w == y || w == z || !g.adjacent(w, z) {
                            continue;
                        }
                        let xp = g.neighbors(x).find(|&n| n != u && n != v && n != y);
                        let zp = g.neighbors(z).find(|&n| n != y && n != v && n != w);
                        if let (Some(xp), Some(zp)) = (xp, zp) {
                            cands.push(Configuration::I2 { v, u, x, y, z, w, xp, zp });
                        }
                    }
                }
            }
        }
    }
    best(g, cands)
}

//! The catalog of reducible configurations: tag names, vertex bindings, and
//! the structural predicate each binding must satisfy. Detectors promise
//! only configurations whose [`Configuration::check`] passes, and consumers
//! re-check rather than trust.

use crate::graph::{Graph, Vertex};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which pattern a configuration instantiates. The `*1` tags belong to the
/// outer-1-planar catalog, the `*2` tags to the 2-boundary catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigTag {
    A1,
    B1,
    C1,
    D1,
    A2,
    B2,
    C2,
    D2,
    E2,
    G2,
    H2,
    I2,
}

impl ConfigTag {
    pub const ALL: [ConfigTag; 12] = [
        ConfigTag::A1,
        ConfigTag::B1,
        ConfigTag::C1,
        ConfigTag::D1,
        ConfigTag::A2,
        ConfigTag::B2,
        ConfigTag::C2,
        ConfigTag::D2,
        ConfigTag::E2,
        ConfigTag::G2,
        ConfigTag::H2,
        ConfigTag::I2,
    ];

    pub fn is_outer_1_planar(self) -> bool {
        matches!(self, ConfigTag::A1 | ConfigTag::B1 | ConfigTag::C1 | ConfigTag::D1)
    }

    pub fn is_two_boundary(self) -> bool {
        !self.is_outer_1_planar()
    }
}

impl fmt::Display for ConfigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for ConfigTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigTag::ALL
            .iter()
            .copied()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown configuration tag: {s}"))
    }
}

/// A detected pattern with its named vertices. Field conventions follow the
/// shapes: `v` is the low-degree vertex being removed (except G2/H2, which
/// remove `x` and `u` respectively), primed names like `xp` denote the one
/// extra neighbor of `x` outside the pattern core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Configuration {
    /// Degree-1 vertex v with neighbor u.
    A1 { v: Vertex, u: Vertex },
    /// Degree-2 vertex v whose neighbors u, w are adjacent.
    B1 { v: Vertex, u: Vertex, w: Vertex },
    /// Degree-2 vertex v whose neighbors u, w are non-adjacent; suppressing
    /// v keeps the embedding class (certified by the detector).
    C1 { v: Vertex, u: Vertex, w: Vertex },
    /// 4-cycle u-x-v-y with chord uv, d(u) = d(v) = 3.
    D1 { u: Vertex, x: Vertex, v: Vertex, y: Vertex },
    /// Degree-1 vertex v with neighbor u.
    A2 { v: Vertex, u: Vertex },
    /// Degree-2 vertex v whose neighbors u, w are adjacent.
    B2 { v: Vertex, u: Vertex, w: Vertex },
    /// Degree-2 vertex v whose neighbors u, w are non-adjacent.
    C2 { v: Vertex, u: Vertex, w: Vertex },
    /// Degree-3 vertex v with neighbors x, y, z where d(x), d(y) are odd.
    D2 { v: Vertex, x: Vertex, y: Vertex, z: Vertex },
    /// Triangle uvw with d(v) = d(w) = 3; x, y are the outside neighbors of
    /// v and w (x = y allowed).
    E2 { u: Vertex, v: Vertex, w: Vertex, x: Vertex, y: Vertex },
    /// Two triangles xuv, yuv over the common edge uv; d(u) = d(v) = 4,
    /// d(x) = 3, d(y) odd; xp, up, vp are the spare neighbors of x, u, v.
    G2 {
        x: Vertex,
        u: Vertex,
        v: Vertex,
        y: Vertex,
        xp: Vertex,
        up: Vertex,
        vp: Vertex,
    },
    /// Central triangle vxy with side triangles uxv and wvy, u != w,
    /// d(v) = d(x) = d(y) = 4, d(u) = 3; xp, yp, up are spare neighbors.
    H2 {
        u: Vertex,
        v: Vertex,
        w: Vertex,
        x: Vertex,
        y: Vertex,
        xp: Vertex,
        yp: Vertex,
        up: Vertex,
    },
    /// Fan: center v of degree 5 over the boundary path u-x-y-z-w,
    /// d(x) = d(z) = 4, d(y) = 3; xp, zp are the spare neighbors of x, z.
    I2 {
        v: Vertex,
        u: Vertex,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        w: Vertex,
        xp: Vertex,
        zp: Vertex,
    },
}

fn distinct(vs: &[Vertex]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == vs.len()
}

fn spare_neighbor(g: &Graph, v: Vertex, excluded: &[Vertex]) -> Option<Vertex> {
    let mut it = g.neighbors(v).filter(|x| !excluded.contains(x));
    let first = it.next()?;
    if it.next().is_some() {
        None
    } else {
        Some(first)
    }
}

impl Configuration {
    pub fn tag(&self) -> ConfigTag {
        match self {
            Configuration::A1 { .. } => ConfigTag::A1,
            Configuration::B1 { .. } => ConfigTag::B1,
            Configuration::C1 { .. } => ConfigTag::C1,
            Configuration::D1 { .. } => ConfigTag::D1,
            Configuration::A2 { .. } => ConfigTag::A2,
            Configuration::B2 { .. } => ConfigTag::B2,
            Configuration::C2 { .. } => ConfigTag::C2,
            Configuration::D2 { .. } => ConfigTag::D2,
            Configuration::E2 { .. } => ConfigTag::E2,
            Configuration::G2 { .. } => ConfigTag::G2,
            Configuration::H2 { .. } => ConfigTag::H2,
            Configuration::I2 { .. } => ConfigTag::I2,
        }
    }

    /// All bound vertices in field order.
    pub fn bound_vertices(&self) -> Vec<Vertex> {
        match *self {
            Configuration::A1 { v, u } | Configuration::A2 { v, u } => vec![v, u],
            Configuration::B1 { v, u, w }
            | Configuration::C1 { v, u, w }
            | Configuration::B2 { v, u, w }
            | Configuration::C2 { v, u, w } => vec![v, u, w],
            Configuration::D1 { u, x, v, y } => vec![u, x, v, y],
            Configuration::D2 { v, x, y, z } => vec![v, x, y, z],
            Configuration::E2 { u, v, w, x, y } => vec![u, v, w, x, y],
            Configuration::G2 { x, u, v, y, xp, up, vp } => vec![x, u, v, y, xp, up, vp],
            Configuration::H2 { u, v, w, x, y, xp, yp, up } => {
                vec![u, v, w, x, y, xp, yp, up]
            }
            Configuration::I2 { v, u, x, y, z, w, xp, zp } => {
                vec![v, u, x, y, z, w, xp, zp]
            }
        }
    }

    /// Structural predicate: degrees, adjacencies, and derived-neighbor
    /// bindings all hold in `g`. Class-validity side conditions (the C1/C2
    /// suppression flag) are embedding-level and checked by the detector.
    pub fn check(&self, g: &Graph) -> bool {
        let alive = self.bound_vertices().iter().all(|&v| g.is_alive(v));
        if !alive {
            return false;
        }
        match *self {
            Configuration::A1 { v, u } | Configuration::A2 { v, u } => {
                g.degree(v) == 1 && g.adjacent(v, u)
            }
            Configuration::B1 { v, u, w } | Configuration::B2 { v, u, w } => {
                g.degree(v) == 2
                    && g.adjacent(v, u)
                    && g.adjacent(v, w)
                    && g.adjacent(u, w)
                    && distinct(&[v, u, w])
            }
            Configuration::C1 { v, u, w } | Configuration::C2 { v, u, w } => {
                g.degree(v) == 2
                    && g.adjacent(v, u)
                    && g.adjacent(v, w)
                    && !g.adjacent(u, w)
                    && distinct(&[v, u, w])
            }
            Configuration::D1 { u, x, v, y } => {
                distinct(&[u, x, v, y])
                    && g.degree(u) == 3
                    && g.degree(v) == 3
                    && g.adjacent(u, x)
                    && g.adjacent(x, v)
                    && g.adjacent(v, y)
                    && g.adjacent(y, u)
                    && g.adjacent(u, v)
            }
            Configuration::D2 { v, x, y, z } => {
                distinct(&[v, x, y, z])
                    && g.degree(v) == 3
                    && g.adjacent(v, x)
                    && g.adjacent(v, y)
                    && g.adjacent(v, z)
                    && g.degree(x) % 2 == 1
                    && g.degree(y) % 2 == 1
            }
            Configuration::E2 { u, v, w, x, y } => {
                distinct(&[u, v, w])
                    && g.adjacent(u, v)
                    && g.adjacent(u, w)
                    && g.adjacent(v, w)
                    && g.degree(v) == 3
                    && g.degree(w) == 3
                    && spare_neighbor(g, v, &[u, w]) == Some(x)
                    && spare_neighbor(g, w, &[u, v]) == Some(y)
            }
            Configuration::G2 { x, u, v, y, xp, up, vp } => {
                distinct(&[x, u, v, y])
                    && g.adjacent(x, u)
                    && g.adjacent(x, v)
                    && g.adjacent(u, v)
                    && g.adjacent(y, u)
                    && g.adjacent(y, v)
                    && g.degree(u) == 4
                    && g.degree(v) == 4
                    && g.degree(x) == 3
                    && g.degree(y) % 2 == 1
                    && spare_neighbor(g, x, &[u, v]) == Some(xp)
                    && spare_neighbor(g, u, &[x, v, y]) == Some(up)
                    && spare_neighbor(g, v, &[x, u, y]) == Some(vp)
            }
            Configuration::H2 { u, v, w, x, y, xp, yp, up } => {
                distinct(&[u, v, w, x, y])
                    && g.adjacent(v, x)
                    && g.adjacent(v, y)
                    && g.adjacent(x, y)
                    && g.adjacent(u, x)
                    && g.adjacent(u, v)
                    && g.adjacent(w, v)
                    && g.adjacent(w, y)
                    && g.degree(v) == 4
                    && g.degree(x) == 4
                    && g.degree(y) == 4
                    && g.degree(u) == 3
                    && spare_neighbor(g, x, &[v, y, u]) == Some(xp)
                    && spare_neighbor(g, y, &[v, x, w]) == Some(yp)
                    && spare_neighbor(g, u, &[x, v]) == Some(up)
            }
            Configuration::I2 { v, u, x, y, z, w, xp, zp } => {
                distinct(&[v, u, x, y, z, w])
                    && g.degree(v) == 5
                    && [u, x, y, z, w].iter().all(|&a| g.adjacent(v, a))
                    && g.adjacent(u, x)
                    && g.adjacent(x, y)
                    && g.adjacent(y, z)
                    && g.adjacent(z, w)
                    && g.degree(x) == 4
                    && g.degree(z) == 4
                    && g.degree(y) == 3
                    && spare_neighbor(g, x, &[u, v, y]) == Some(xp)
                    && spare_neighbor(g, z, &[y, v, w]) == Some(zp)
            }
        }
    }
}

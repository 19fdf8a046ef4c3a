use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

/// Colors are 1-based; 0 never appears in a stored coloring.
pub type Color = u32;

/// Outcome of checking a coloring for the odd property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddVerdict {
    Valid,
    Uncolored(Vertex),
    ImproperEdge(Vertex, Vertex),
    MissingOddColor(Vertex),
}

impl OddVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, OddVerdict::Valid)
    }
}

/// Partial vertex coloring with a fixed palette `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    k: Color,
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new(k: Color, n_slots: usize) -> Self {
        assert!(k >= 1, "palette must be nonempty");
        Coloring {
            k,
            colors: vec![None; n_slots],
        }
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn n_slots(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        assert!(c >= 1 && c <= self.k, "color {c} outside palette 1..={}", self.k);
        self.colors[v] = Some(c);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn is_colored(&self, v: Vertex) -> bool {
        self.colors[v].is_some()
    }

    /// True when every live vertex of `g` is colored.
    pub fn is_total(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.is_colored(v))
    }

    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.colors.iter().flatten().copied().collect()
    }
}

/// Occurrences of each color among the colored neighbors of `v`; index by color.
pub fn neighbor_color_counts(g: &Graph, tau: &Coloring, v: Vertex) -> Vec<u32> {
    let mut counts = vec![0u32; tau.k() as usize + 1];
    for u in g.neighbors(v) {
        if let Some(c) = tau.get(u) {
            counts[c as usize] += 1;
        }
    }
    counts
}

/// Colors appearing an odd number of times among the colored neighbors of `v`.
pub fn odd_colors(g: &Graph, tau: &Coloring, v: Vertex) -> Vec<Color> {
    neighbor_color_counts(g, tau, v)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &n)| n % 2 == 1)
        .map(|(c, _)| c as Color)
        .collect()
}

/// The unique color with odd multiplicity in `v`'s colored neighborhood, if
/// exactly one exists.
pub fn tau_o(g: &Graph, tau: &Coloring, v: Vertex) -> Option<Color> {
    let odd = odd_colors(g, tau, v);
    if odd.len() == 1 {
        Some(odd[0])
    } else {
        None
    }
}

/// Colors blocked at `v`: each colored neighbor contributes its own color and
/// its unique odd color (when defined).
pub fn forbidden_set(g: &Graph, tau: &Coloring, v: Vertex) -> BTreeSet<Color> {
    let mut out = BTreeSet::new();
    for u in g.neighbors(v) {
        if let Some(c) = tau.get(u) {
            out.insert(c);
            if let Some(c) = tau_o(g, tau, u) {
                out.insert(c);
            }
        }
    }
    out
}

/// Palette colors not blocked at `v`, ascending.
pub fn available_set(g: &Graph, tau: &Coloring, v: Vertex) -> Vec<Color> {
    let forb = forbidden_set(g, tau, v);
    (1..=tau.k()).filter(|c| !forb.contains(c)).collect()
}

/// First violated edge (u, v) with u < v in slot order, if any.
pub fn improper_edge(g: &Graph, tau: &Coloring) -> Option<(Vertex, Vertex)> {
    g.edges().find(|&(u, v)| {
        matches!((tau.get(u), tau.get(v)), (Some(a), Some(b)) if a == b)
    })
}

/// Full check: total, proper, and every live non-isolated vertex sees some
/// color an odd number of times.
pub fn verify_odd(g: &Graph, tau: &Coloring) -> OddVerdict {
    for v in g.vertices() {
        if !tau.is_colored(v) {
            return OddVerdict::Uncolored(v);
        }
    }
    if let Some((u, v)) = improper_edge(g, tau) {
        return OddVerdict::ImproperEdge(u, v);
    }
    for v in g.vertices() {
        if g.degree(v) > 0 && odd_colors(g, tau, v).is_empty() {
            return OddVerdict::MissingOddColor(v);
        }
    }
    OddVerdict::Valid
}

/// Permutation of the palette `1..=k`, used to rename colorings into the
/// canonical form an extension rule expects and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    fwd: Vec<Color>,
}

impl Palette {
    pub fn identity(k: Color) -> Self {
        Palette {
            fwd: (0..=k).collect(),
        }
    }

    pub fn k(&self) -> Color {
        self.fwd.len() as Color - 1
    }

    /// Transposition of two colors.
    pub fn swapped(k: Color, a: Color, b: Color) -> Self {
        let mut p = Palette::identity(k);
        p.fwd.swap(a as usize, b as usize);
        p
    }

    /// The permutation determined by `from -> to` pairs, with all remaining
    /// colors matched up in ascending order. `None` if the pairs are not
    /// injective or contradict each other.
    pub fn sending(k: Color, pairs: &[(Color, Color)]) -> Option<Self> {
        let mut fwd = vec![0; k as usize + 1];
        let mut taken = vec![false; k as usize + 1];
        for &(a, b) in pairs {
            if a == 0 || a > k || b == 0 || b > k {
                return None;
            }
            if fwd[a as usize] != 0 {
                if fwd[a as usize] != b {
                    return None;
                }
                continue;
            }
            if taken[b as usize] {
                return None;
            }
            fwd[a as usize] = b;
            taken[b as usize] = true;
        }
        let mut free = (1..=k).filter(|&b| !taken[b as usize]);
        for a in 1..=k {
            if fwd[a as usize] == 0 {
                fwd[a as usize] = free.next().unwrap();
            }
        }
        Some(Palette { fwd })
    }

    pub fn apply(&self, c: Color) -> Color {
        self.fwd[c as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut fwd = vec![0; self.fwd.len()];
        for (a, &b) in self.fwd.iter().enumerate().skip(1) {
            fwd[b as usize] = a as Color;
        }
        Palette { fwd }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Palette) -> Self {
        let fwd = self
            .fwd
            .iter()
            .enumerate()
            .map(|(a, &b)| if a == 0 { 0 } else { next.apply(b) })
            .collect();
        Palette { fwd }
    }

    pub fn apply_to(&self, tau: &Coloring) -> Coloring {
        let mut out = tau.clone();
        for v in 0..tau.n_slots() {
            if let Some(c) = tau.get(v) {
                out.set(v, self.apply(c));
            }
        }
        out
    }
}

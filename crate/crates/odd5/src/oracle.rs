//! Exhaustive search for odd colorings, used to pin expected values in tests
//! and as a last-resort fallback on small instances.

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, Vertex};

/// Instances above this size are rejected by callers that guard the oracle.
pub const DEFAULT_MAX_ORACLE_N: usize = 12;

struct Search {
    k: u32,
    order: Vec<Vertex>,
    nbr_pos: Vec<Vec<usize>>,
    color: Vec<u32>,
    counts: Vec<Vec<u16>>,
    odd_size: Vec<u16>,
    remaining: Vec<u16>,
}

impl Search {
    fn new(g: &Graph, k: u32) -> Self {
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut pos_of = vec![usize::MAX; g.n_slots()];
        for (i, &v) in order.iter().enumerate() {
            pos_of[v] = i;
        }
        let nbr_pos = order
            .iter()
            .map(|&v| g.neighbors(v).map(|u| pos_of[u]).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let n = order.len();
        let remaining = nbr_pos.iter().map(|ns: &Vec<usize>| ns.len() as u16).collect();
        Search {
            k,
            order,
            nbr_pos,
            color: vec![0; n],
            counts: vec![vec![0; k as usize + 1]; n],
            odd_size: vec![0; n],
            remaining,
        }
    }

    fn assign(&mut self, p: usize, c: u32) {
        self.color[p] = c;
        for i in 0..self.nbr_pos[p].len() {
            let q = self.nbr_pos[p][i];
            let cnt = &mut self.counts[q][c as usize];
            *cnt += 1;
            if *cnt % 2 == 1 {
                self.odd_size[q] += 1;
            } else {
                self.odd_size[q] -= 1;
            }
            self.remaining[q] -= 1;
        }
    }

    fn unassign(&mut self, p: usize, c: u32) {
        self.color[p] = 0;
        for i in 0..self.nbr_pos[p].len() {
            let q = self.nbr_pos[p][i];
            let cnt = &mut self.counts[q][c as usize];
            *cnt -= 1;
            if *cnt % 2 == 1 {
                self.odd_size[q] += 1;
            } else {
                self.odd_size[q] -= 1;
            }
            self.remaining[q] += 1;
        }
    }

    /// All finished vertices touched by coloring `p` still have a nonempty
    /// odd set. A vertex is finished once it and its whole neighborhood are
    /// colored.
    fn still_feasible(&self, p: usize) -> bool {
        let deg_p = self.nbr_pos[p].len();
        if deg_p > 0 && self.remaining[p] == 0 && self.odd_size[p] == 0 {
            return false;
        }
        for &q in &self.nbr_pos[p] {
            if self.color[q] != 0 && self.remaining[q] == 0 && self.odd_size[q] == 0 {
                return false;
            }
        }
        true
    }

    fn solve(&mut self, p: usize, max_used: u32) -> bool {
        if p == self.order.len() {
            return true;
        }
        let cap = self.k.min(max_used + 1);
        for c in 1..=cap {
            if self.counts[p][c as usize] != 0 {
                continue;
            }
            self.assign(p, c);
            if self.still_feasible(p) && self.solve(p + 1, max_used.max(c)) {
                return true;
            }
            self.unassign(p, c);
        }
        false
    }
}

/// Searches for an odd coloring of the live part of `g` with palette `1..=k`.
pub fn is_odd_k_colorable(g: &Graph, k: u32) -> Option<Coloring> {
    assert!(k >= 1);
    let mut s = Search::new(g, k);
    if !s.solve(0, 0) {
        return None;
    }
    let mut tau = Coloring::new(k as Color, g.n_slots());
    for (p, &v) in s.order.iter().enumerate() {
        tau.set(v, s.color[p]);
    }
    Some(tau)
}

/// Smallest `k` admitting an odd coloring, with a witness. An empty graph has
/// odd chromatic number 0 and no witness.
pub fn chi_odd(g: &Graph) -> (u32, Option<Coloring>) {
    let n = g.live_count();
    if n == 0 {
        return (0, None);
    }
    for k in 1..=n as u32 {
        if let Some(w) = is_odd_k_colorable(g, k) {
            return (k, Some(w));
        }
    }
    unreachable!("assigning {n} distinct colors is always an odd coloring");
}

//! Instance generation: seeded random embeddings for the fuzz harness and an
//! exhaustive small-n stream for the sweep suites.
//!
//! Random outer-1-planar instances are an outer cycle or path plus greedily
//! sampled chords, rejecting any chord that would put two crossings on one
//! edge. Random 2-boundary instances are an outer cycle with an optional
//! inner boundary (cycle, single edge, or single hub), joined by a laminar
//! set of interconnecting edges chosen along a simultaneous lap of both
//! boundaries; shared vertices are made by merging the endpoints of an
//! attachment. Everything is deterministic in the seed and is re-validated
//! before being returned.

use crate::embed::o1p::OuterOnePlanarEmbedding;
use crate::embed::twobp::{designate_faces, trace_faces, FaceWalk, TwoBoundaryEmbedding};
use crate::embed::{EmbedError, Embedding};
use crate::graph::{Graph, Vertex};
use crate::special::{antiprism_embedding, prism_embedding};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// The two instance classes the library handles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    #[serde(rename = "o1p")]
    OuterOnePlanar,
    #[serde(rename = "2bp")]
    TwoBoundaryPlanar,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::OuterOnePlanar => "o1p",
            GraphClass::TwoBoundaryPlanar => "2bp",
        })
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "o1p" => Ok(GraphClass::OuterOnePlanar),
            "2bp" => Ok(GraphClass::TwoBoundaryPlanar),
            other => Err(format!("unknown graph class {other:?}, expected o1p or 2bp")),
        }
    }
}

/// Knobs for the seeded generators. `n` sizes outer-1-planar instances;
/// `n_out`/`n_in` size the two boundaries of 2-boundary ones (`n_in` may be
/// 0, 1, or 2 for a missing, point, or single-edge inner boundary).
///
/// Special corner: at `inter_edge_density = 1.0` with `n_out == n_in` and no
/// shared vertices the attachment lap degenerates, and the generator pins the
/// outcome to the exceptional families: `crossing_density = 0.0` keeps the
/// attachments radial (the prism), anything larger staggers them into the
/// zigzag (the antiprism).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct GenParams {
    pub n: usize,
    pub n_out: usize,
    pub n_in: usize,
    pub chord_density: f64,
    pub crossing_density: f64,
    pub inter_edge_density: f64,
    pub shared_vertex_count: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 10,
            n_out: 7,
            n_in: 4,
            chord_density: 0.3,
            crossing_density: 0.5,
            inter_edge_density: 0.4,
            shared_vertex_count: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("{what} must lie in [0, 1], got {value}")]
    DensityOutOfRange { what: &'static str, value: f64 },
    #[error("outer boundary needs at least 3 vertices, got {0}")]
    OuterTooSmall(usize),
    #[error("cannot merge {requested} shared vertices; only {available} compatible attachment slots")]
    SharedInfeasible { requested: usize, available: usize },
    #[error("exhaustive enumeration is capped at {cap} vertices, got {requested}")]
    EnumerationTooLarge { requested: usize, cap: usize },
    #[error("generated instance failed validation: {0}")]
    Embed(#[from] EmbedError),
    #[error("generator invariant broke: {0}")]
    Internal(String),
}

/// One embedded instance from either class.
#[derive(Debug, Clone)]
pub enum Instance {
    OuterOnePlanar(OuterOnePlanarEmbedding),
    TwoBoundaryPlanar(TwoBoundaryEmbedding),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::OuterOnePlanar(e) => e.graph(),
            Instance::TwoBoundaryPlanar(e) => e.graph(),
        }
    }

    pub fn class(&self) -> GraphClass {
        match self {
            Instance::OuterOnePlanar(_) => GraphClass::OuterOnePlanar,
            Instance::TwoBoundaryPlanar(_) => GraphClass::TwoBoundaryPlanar,
        }
    }
}

fn check_density(value: f64, what: &'static str) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(GenError::DensityOutOfRange { what, value })
    }
}

/// Chords `a` and `b` drawn on the circle `0, 1, .., n-1` cross exactly when
/// one endpoint of `b` lies strictly between the endpoints of `a` and the
/// other does not.
fn chords_cross(a: (Vertex, Vertex), b: (Vertex, Vertex)) -> bool {
    let (p, q) = (a.0.min(a.1), a.0.max(a.1));
    let (x, y) = b;
    if x == p || x == q || y == p || y == q {
        return false;
    }
    let inside = |v: Vertex| p < v && v < q;
    inside(x) != inside(y)
}

/// Seeded outer-1-planar instance on the circle order `0..n`: a cycle (or,
/// less often, a path) plus chords accepted greedily under the one-crossing-
/// per-edge budget. `crossing_density` is the appetite for accepting a chord
/// that crosses an existing edge at all.
pub fn gen_o1p(params: &GenParams) -> Result<OuterOnePlanarEmbedding, GenError> {
    check_density(params.chord_density, "chordDensity")?;
    check_density(params.crossing_density, "crossingDensity")?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut g = Graph::new(n);
    if n == 2 {
        g.add_edge(0, 1).expect("fresh edge");
    } else if n >= 3 {
        let closed = rng.gen_bool(0.75);
        for i in 0..n - 1 {
            g.add_edge(i, i + 1).expect("fresh edge");
        }
        if closed {
            g.add_edge(n - 1, 0).expect("fresh edge");
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut crossed = vec![0usize; edges.len()];
    let mut candidates: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.adjacent(i, j))
        .collect();
    candidates.shuffle(&mut rng);
    for (u, v) in candidates {
        if !rng.gen_bool(params.chord_density) {
            continue;
        }
        let hits: Vec<usize> = (0..edges.len())
            .filter(|&i| chords_cross((u, v), edges[i]))
            .collect();
        if hits.len() > 1 || hits.iter().any(|&i| crossed[i] > 0) {
            continue;
        }
        if hits.len() == 1 && !rng.gen_bool(params.crossing_density) {
            continue;
        }
        g.add_edge(u, v).expect("candidate chord not yet present");
        for &i in &hits {
            crossed[i] += 1;
        }
        crossed.push(hits.len());
        edges.push((u, v));
    }
    OuterOnePlanarEmbedding::new(g, (0..n).collect()).map_err(GenError::from)
}

/// One interconnection emitted by the boundary lap: outer position `p` joined
/// to inner position `q`. The wrap flags remember whether the lap pointer had
/// already completed its round when the attachment was emitted, which decides
/// on which side of position 0 the edge lands in the rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Att {
    p: usize,
    q: usize,
    p_wrapped: bool,
    q_wrapped: bool,
}

/// Walks both boundaries once, emitting laminar attachments along the way.
/// Emission order is monotone in both boundary positions, so no two
/// attachments interleave.
fn lap_walk(no: usize, ni: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<Att> {
    let mut atts = Vec::new();
    if ni == 0 {
        return atts;
    }
    let (mut p_done, mut q_done) = (0usize, 0usize);
    let mut seen = BTreeSet::new();
    let mut just_emitted = false;
    let mut last_advance_was_p = false;
    loop {
        let done_p = p_done == no;
        let done_q = q_done == ni;
        if done_p && done_q {
            break;
        }
        if !just_emitted && rng.gen_bool(density) {
            let pair = (p_done % no, q_done % ni);
            if seen.insert(pair) {
                atts.push(Att {
                    p: pair.0,
                    q: pair.1,
                    p_wrapped: done_p,
                    q_wrapped: done_q,
                });
            }
            just_emitted = true;
            continue;
        }
        let rem_p = (no - p_done) as u32;
        let rem_q = (ni - q_done) as u32;
        let advance_p = if done_p {
            false
        } else if done_q {
            true
        } else if density >= 1.0 {
            match rem_p.cmp(&rem_q) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => !last_advance_was_p,
            }
        } else {
            rng.gen_ratio(rem_p, rem_p + rem_q)
        };
        if advance_p {
            p_done += 1;
        } else {
            q_done += 1;
        }
        last_advance_was_p = advance_p;
        just_emitted = false;
    }
    atts
}

fn outer_adjacent(no: usize, a: usize, b: usize) -> bool {
    (a + 1) % no == b || (b + 1) % no == a
}

fn inner_adjacent(ni: usize, a: usize, b: usize) -> bool {
    match ni {
        0..=2 => true,
        _ => (a + 1) % ni == b || (b + 1) % ni == a,
    }
}

/// Indices of attachments eligible to become shared vertices: both endpoints
/// must carry exactly this one attachment, so that merging them is a plain
/// contraction of the edge.
fn merge_eligible(no: usize, ni: usize, atts: &[Att]) -> Vec<usize> {
    let mut out_count = vec![0usize; no];
    let mut in_count = vec![0usize; ni.max(1)];
    for a in atts {
        out_count[a.p] += 1;
        in_count[a.q] += 1;
    }
    (0..atts.len())
        .filter(|&i| out_count[atts[i].p] == 1 && in_count[atts[i].q] == 1)
        .collect()
}

/// Two merges are compatible unless their outer endpoints and their inner
/// endpoints are both boundary-adjacent, in which case contracting both
/// would collapse a boundary edge onto an existing one.
fn merges_compatible(no: usize, ni: usize, a: Att, b: Att) -> bool {
    !(outer_adjacent(no, a.p, b.p) && inner_adjacent(ni, a.q, b.q))
}

fn pick_merges(
    no: usize,
    ni: usize,
    atts: &[Att],
    want: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>, GenError> {
    if want == 0 {
        return Ok(Vec::new());
    }
    if ni == 0 {
        return Err(GenError::SharedInfeasible {
            requested: want,
            available: 0,
        });
    }
    let mut eligible = merge_eligible(no, ni, atts);
    eligible.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::new();
    for i in eligible {
        if chosen.len() == want {
            break;
        }
        if chosen
            .iter()
            .all(|&j| merges_compatible(no, ni, atts[i], atts[j]))
        {
            chosen.push(i);
        }
    }
    if chosen.len() < want {
        return Err(GenError::SharedInfeasible {
            requested: want,
            available: chosen.len(),
        });
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// A fully decided annulus instance: boundary sizes, the laminar attachment
/// sequence in emission order, and which attachments are contracted into
/// shared vertices.
struct AnnulusPlan {
    n_out: usize,
    n_in: usize,
    attachments: Vec<Att>,
    merges: Vec<usize>,
}

struct AnnulusParts {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    boundary: Vec<(Vertex, Vertex)>,
    inner_labels: Vec<Vertex>,
}

/// Materializes the plan into a graph plus rotation system.
///
/// Conventions, calibrated against the canonical prism embedding: outer
/// vertex p lists `[next, attachments.., prev]` with its attachments in
/// reverse emission order; inner vertex q lists `[attachments.., next, prev]`
/// in emission order. Attachments emitted after a pointer wrapped belong to
/// position 0 but sit on the far side of the lap seam, so they are placed
/// after (outer) or before (inner) the block emitted at the lap start. A
/// merged attachment splices the inner vertex's remaining rotation into the
/// outer vertex's slot, exactly as edge contraction does.
fn build_annulus(plan: &AnnulusPlan) -> Result<AnnulusParts, GenError> {
    let (no, ni) = (plan.n_out, plan.n_in);
    let internal = |what: &str| GenError::Internal(what.to_string());
    let merged_at: BTreeMap<usize, usize> = plan
        .merges
        .iter()
        .map(|&i| (plan.attachments[i].q, plan.attachments[i].p))
        .collect();
    let merge_slots: BTreeSet<usize> = plan.merges.iter().copied().collect();
    let mut label = vec![0usize; ni];
    let mut next_label = no;
    for q in 0..ni {
        label[q] = match merged_at.get(&q) {
            Some(&p) => p,
            None => {
                let l = next_label;
                next_label += 1;
                l
            }
        };
    }
    let n = next_label;
    let inner_pairs: Vec<(usize, usize)> = match ni {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..ni).map(|q| (q, (q + 1) % ni)).collect(),
    };

    let mut g = Graph::new(n);
    let mut boundary = Vec::new();
    for p in 0..no {
        let next = (p + 1) % no;
        g.add_edge(p, next)
            .map_err(|_| internal("outer boundary edge collided"))?;
        boundary.push((p.min(next), p.max(next)));
    }
    for &(a, b) in &inner_pairs {
        let (u, v) = (label[a], label[b]);
        g.add_edge(u, v)
            .map_err(|_| internal("inner boundary edge collided"))?;
        boundary.push((u.min(v), u.max(v)));
    }
    for (i, a) in plan.attachments.iter().enumerate() {
        if merge_slots.contains(&i) {
            continue;
        }
        g.add_edge(a.p, label[a.q])
            .map_err(|_| internal("attachment edge collided"))?;
    }

    let inner_neighbors = |q: usize| -> Vec<Vertex> {
        match ni {
            0 | 1 => Vec::new(),
            2 => vec![label[1 - q]],
            _ => vec![label[(q + 1) % ni], label[(q + ni - 1) % ni]],
        }
    };
    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for p in 0..no {
        let mut rot = vec![(p + 1) % no];
        if let Some(&slot) = plan
            .merges
            .iter()
            .find(|&&i| plan.attachments[i].p == p)
        {
            rot.extend(inner_neighbors(plan.attachments[slot].q));
        } else {
            let block = |wrapped: bool| {
                plan.attachments
                    .iter()
                    .filter(move |a| a.p == p && a.p_wrapped == wrapped)
                    .map(|a| label[a.q])
            };
            let pre: Vec<Vertex> = block(false).collect();
            let post: Vec<Vertex> = block(true).collect();
            rot.extend(pre.into_iter().rev());
            rot.extend(post.into_iter().rev());
        }
        rot.push((p + no - 1) % no);
        rotation[p] = rot;
    }
    for q in 0..ni {
        if merged_at.contains_key(&q) {
            continue;
        }
        let block = |wrapped: bool| {
            plan.attachments
                .iter()
                .filter(move |a| a.q == q && a.q_wrapped == wrapped)
                .map(|a| a.p)
        };
        let mut rot: Vec<Vertex> = block(true).collect();
        rot.extend(block(false));
        rot.extend(inner_neighbors(q));
        rotation[label[q]] = rot;
    }
    Ok(AnnulusParts {
        graph: g,
        rotation,
        boundary,
        inner_labels: label,
    })
}

/// Traces the faces of a built annulus and designates its two boundary
/// faces by construction: the face visiting exactly the outer ring, and the
/// face on the empty side of the inner ring. When the inner boundary is a
/// single vertex or edge it has no face of its own, so the smallest face
/// containing it stands in; if it is an isolated vertex no inner region is
/// needed at all.
fn embed_annulus(plan: &AnnulusPlan) -> Result<TwoBoundaryEmbedding, GenError> {
    let parts = build_annulus(plan)?;
    let faces = trace_faces(&parts.graph, &parts.rotation);
    let internal = |what: &str| GenError::Internal(what.to_string());
    let outer_set: BTreeSet<Vertex> = (0..plan.n_out).collect();
    let oi = faces
        .iter()
        .position(|f| f.vertices() == outer_set)
        .ok_or_else(|| internal("no face walks exactly the outer ring"))?;
    let inner_set: BTreeSet<Vertex> = parts.inner_labels.iter().copied().collect();
    let inner = if plan.n_in == 0 {
        Vec::new()
    } else if plan.n_in >= 3 {
        let ii = faces
            .iter()
            .enumerate()
            .position(|(i, f)| i != oi && f.vertices() == inner_set)
            .ok_or_else(|| internal("no face walks exactly the inner ring"))?;
        vec![faces[ii].clone()]
    } else {
        let candidate = faces
            .iter()
            .enumerate()
            .filter(|&(i, f)| i != oi && f.vertices().is_superset(&inner_set))
            .min_by_key(|(_, f)| f.vertices().len());
        match candidate {
            Some((_, f)) => vec![f.clone()],
            None if inner_set
                .iter()
                .all(|&v| parts.graph.degree(v) == 0) =>
            {
                Vec::new()
            }
            None => return Err(internal("no face covers the degenerate inner boundary")),
        }
    };
    let outer = vec![faces[oi].clone()];
    TwoBoundaryEmbedding::from_traced(parts.graph, parts.rotation, outer, inner)
        .map_err(GenError::from)
}

/// Seeded 2-boundary instance: outer cycle, optional inner boundary, laminar
/// attachments from a random lap of both boundaries, and optionally some
/// attachments contracted into shared vertices. An infeasible shared-vertex
/// request reports how many slots the drawn layout could actually offer.
pub fn gen_2bp(params: &GenParams) -> Result<TwoBoundaryEmbedding, GenError> {
    check_density(params.chord_density, "chordDensity")?;
    check_density(params.crossing_density, "crossingDensity")?;
    check_density(params.inter_edge_density, "interEdgeDensity")?;
    let (no, ni) = (params.n_out, params.n_in);
    if no < 3 {
        return Err(GenError::OuterTooSmall(no));
    }
    if params.inter_edge_density >= 1.0 && ni == no && params.shared_vertex_count == 0 {
        return Ok(if params.crossing_density == 0.0 {
            prism_embedding(no)
        } else {
            antiprism_embedding(no)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let attachments = lap_walk(no, ni, params.inter_edge_density, &mut rng);
    let merges = pick_merges(no, ni, &attachments, params.shared_vertex_count, &mut rng)?;
    embed_annulus(&AnnulusPlan {
        n_out: no,
        n_in: ni,
        attachments,
        merges,
    })
}

/// Hard size cap for `enumerate_small`.
pub const ENUMERATION_CAP: usize = 8;

/// Streams every instance of the class on up to `n_max` vertices, exhaustive
/// up to vertex labeling; duplicates may occur and no isomorphism reduction
/// is attempted.
///
/// Outer-1-planar instances are all edge subsets drawable on the fixed circle
/// order `0..n` within the one-crossing-per-edge budget; every abstract
/// instance of the class appears here under some labeling. The 2-boundary
/// stream is the union of (a) every crossing-free circle drawing, re-read as
/// a planar rotation system with the unbounded face designated, and (b) every
/// annulus: outer cycle plus inner boundary joined by each laminar attachment
/// family, each compatible set of shared-vertex contractions, and each subset
/// of boundary edges that still admits a two-face designation.
pub fn enumerate_small(
    class: GraphClass,
    n_max: usize,
    mut visit: impl FnMut(Instance),
) -> Result<(), GenError> {
    if n_max > ENUMERATION_CAP {
        return Err(GenError::EnumerationTooLarge {
            requested: n_max,
            cap: ENUMERATION_CAP,
        });
    }
    match class {
        GraphClass::OuterOnePlanar => {
            for n in 1..=n_max {
                stream_circle_drawings(n, true, &mut |emb| visit(Instance::OuterOnePlanar(emb)));
            }
        }
        GraphClass::TwoBoundaryPlanar => {
            for n in 1..=n_max {
                stream_circle_drawings(n, false, &mut |emb| {
                    if let Some(t) = circle_to_two_boundary(&emb) {
                        visit(Instance::TwoBoundaryPlanar(t));
                    }
                });
            }
            stream_annuli(n_max, &mut visit);
        }
    }
    Ok(())
}

/// Depth-first sweep over all edge subsets on the circle order `0..n`,
/// pruned by the crossing budget (no crossings at all when `allow_crossings`
/// is false).
fn stream_circle_drawings(
    n: usize,
    allow_crossings: bool,
    visit: &mut dyn FnMut(OuterOnePlanarEmbedding),
) {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut chosen: Vec<(Vertex, Vertex)> = Vec::new();
    let mut crossed: Vec<usize> = Vec::new();

    fn rec(
        k: usize,
        n: usize,
        pairs: &[(Vertex, Vertex)],
        chosen: &mut Vec<(Vertex, Vertex)>,
        crossed: &mut Vec<usize>,
        allow: bool,
        visit: &mut dyn FnMut(OuterOnePlanarEmbedding),
    ) {
        if k == pairs.len() {
            let g = Graph::from_edges(n, chosen).expect("enumerated edge set is simple");
            let emb = OuterOnePlanarEmbedding::new(g, (0..n).collect())
                .expect("enumeration keeps the crossing budget");
            visit(emb);
            return;
        }
        rec(k + 1, n, pairs, chosen, crossed, allow, visit);
        let cand = pairs[k];
        let hits: Vec<usize> = (0..chosen.len())
            .filter(|&i| chords_cross(cand, chosen[i]))
            .collect();
        let admissible = if allow {
            hits.len() <= 1 && hits.iter().all(|&i| crossed[i] == 0)
        } else {
            hits.is_empty()
        };
        if admissible {
            for &i in &hits {
                crossed[i] += 1;
            }
            chosen.push(cand);
            crossed.push(hits.len());
            rec(k + 1, n, pairs, chosen, crossed, allow, visit);
            chosen.pop();
            crossed.pop();
            for &i in &hits {
                crossed[i] -= 1;
            }
        }
    }

    rec(0, n, &pairs, &mut chosen, &mut crossed, allow_crossings, visit);
}

/// Re-reads a crossing-free circle drawing as a planar rotation system and
/// designates, for every component with an edge, the face that sees the whole
/// component (its unbounded side). Vertices without edges are exempt from
/// coverage.
fn circle_to_two_boundary(emb: &OuterOnePlanarEmbedding) -> Option<TwoBoundaryEmbedding> {
    let g = emb.graph().clone();
    let n = g.n_slots();
    let rotation: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut nb: Vec<Vertex> = g.neighbors(v).collect();
            nb.sort_by_key(|&u| (u + n - v) % n);
            nb
        })
        .collect();
    let faces = trace_faces(&g, &rotation);
    let mut outer: Vec<FaceWalk> = Vec::new();
    for comp in g.components() {
        if comp.iter().all(|&v| g.degree(v) == 0) {
            continue;
        }
        let set: BTreeSet<Vertex> = comp.iter().copied().collect();
        let f = faces.iter().find(|f| set.is_subset(&f.vertices()))?;
        outer.push(f.clone());
    }
    TwoBoundaryEmbedding::from_traced(g, rotation, outer, Vec::new()).ok()
}

/// Exhaustive annulus sweep: every boundary split, every laminar attachment
/// family, every compatible merge subset, every boundary-edge subset that
/// still designates. Deduplicates by labeled edge set within one split.
fn stream_annuli(n_max: usize, visit: &mut dyn FnMut(Instance)) {
    for no in 3..n_max {
        for ni in 1..=(n_max - no) {
            enum_annulus(no, ni, visit);
        }
    }
}

/// All laminar attachment families on an (outer, inner) boundary pair, as
/// produced by every possible lap walk, deduplicated by attachment set.
fn all_families(no: usize, ni: usize) -> Vec<Vec<Att>> {
    fn rec(
        no: usize,
        ni: usize,
        p_done: usize,
        q_done: usize,
        just_emitted: bool,
        cur: &mut Vec<Att>,
        seen: &mut BTreeSet<Vec<(usize, usize)>>,
        out: &mut Vec<Vec<Att>>,
    ) {
        let done_p = p_done == no;
        let done_q = q_done == ni;
        if done_p && done_q {
            let mut key: Vec<(usize, usize)> = cur.iter().map(|a| (a.p, a.q)).collect();
            key.sort_unstable();
            if seen.insert(key) {
                out.push(cur.clone());
            }
            return;
        }
        if !done_p {
            rec(no, ni, p_done + 1, q_done, false, cur, seen, out);
        }
        if !done_q {
            rec(no, ni, p_done, q_done + 1, false, cur, seen, out);
        }
        if !just_emitted {
            let pair = (p_done % no, q_done % ni);
            if !cur.iter().any(|a| (a.p, a.q) == pair) {
                cur.push(Att {
                    p: pair.0,
                    q: pair.1,
                    p_wrapped: done_p,
                    q_wrapped: done_q,
                });
                rec(no, ni, p_done, q_done, true, cur, seen, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    rec(no, ni, 0, 0, false, &mut Vec::new(), &mut seen, &mut out);
    out
}

/// All subsets of merge-eligible attachment slots whose members are pairwise
/// compatible.
fn all_merge_subsets(no: usize, ni: usize, atts: &[Att]) -> Vec<Vec<usize>> {
    let eligible = merge_eligible(no, ni, atts);
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    fn rec(
        k: usize,
        no: usize,
        ni: usize,
        atts: &[Att],
        eligible: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == eligible.len() {
            return;
        }
        rec(k + 1, no, ni, atts, eligible, cur, out);
        let i = eligible[k];
        if cur
            .iter()
            .all(|&j| merges_compatible(no, ni, atts[i], atts[j]))
        {
            cur.push(i);
            out.push(cur.clone());
            rec(k + 1, no, ni, atts, eligible, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(0, no, ni, atts, &eligible, &mut cur, &mut out);
    out
}

fn enum_annulus(no: usize, ni: usize, visit: &mut dyn FnMut(Instance)) {
    let mut emitted: HashSet<(usize, Vec<(Vertex, Vertex)>)> = HashSet::new();
    for family in all_families(no, ni) {
        for merges in all_merge_subsets(no, ni, &family) {
            let plan = AnnulusPlan {
                n_out: no,
                n_in: ni,
                attachments: family.clone(),
                merges,
            };
            let parts = match build_annulus(&plan) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let b = parts.boundary.len();
            for mask in 0u32..(1 << b) {
                let mut g = parts.graph.clone();
                let mut rotation = parts.rotation.clone();
                for (bit, &(u, v)) in parts.boundary.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        g.remove_edge(u, v).expect("boundary edge present");
                        rotation[u].retain(|&x| x != v);
                        rotation[v].retain(|&x| x != u);
                    }
                }
                let key = (g.n_slots(), g.edges().collect::<Vec<_>>());
                if !emitted.insert(key) {
                    continue;
                }
                let faces = trace_faces(&g, &rotation);
                let Some((oi, ii)) = designate_faces(&g, &faces) else {
                    continue;
                };
                let outer = vec![faces[oi].clone()];
                let inner = match ii {
                    Some(j) => vec![faces[j].clone()],
                    None => Vec::new(),
                };
                match TwoBoundaryEmbedding::from_traced(g, rotation, outer, inner) {
                    Ok(emb) => visit(Instance::TwoBoundaryPlanar(emb)),
                    Err(_) => continue,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigTag;
    use crate::rules::{find_config_2bp, Detection};
    use crate::solver::odd_five_color_2bp;
    use crate::special::{recognize_special, SpecialKind};
    use proptest::prelude::*;
    use rand::Rng;

    fn att(p: usize, q: usize) -> Att {
        Att {
            p,
            q,
            p_wrapped: false,
            q_wrapped: false,
        }
    }

    #[test]
    fn chord_crossing_is_strict_interleaving() {
        assert!(chords_cross((0, 2), (1, 3)));
        assert!(!chords_cross((0, 1), (1, 2)));
        assert!(!chords_cross((0, 2), (3, 5)));
        assert!(!chords_cross((1, 4), (2, 3)));
    }

    #[test]
    fn seeded_o1p_instances_are_deterministic_and_valid() {
        for n in [0, 1, 2, 5, 9, 17, 33] {
            for seed in 0..60 {
                let params = GenParams {
                    n,
                    seed,
                    chord_density: 0.45,
                    crossing_density: 0.6,
                    ..GenParams::default()
                };
                let a = gen_o1p(&params).unwrap();
                let b = gen_o1p(&params).unwrap();
                assert_eq!(a, b);
                assert!(a.validate().is_ok());
                assert_eq!(a.order().len(), n);
            }
        }
    }

    #[test]
    fn zero_chord_density_gives_cycle_or_path() {
        for seed in 0..50 {
            let params = GenParams {
                n: 5,
                seed,
                chord_density: 0.0,
                ..GenParams::default()
            };
            let emb = gen_o1p(&params).unwrap();
            let edges: BTreeSet<_> = emb.graph().edges().collect();
            let path: BTreeSet<_> = [(0, 1), (1, 2), (2, 3), (3, 4)].into_iter().collect();
            let mut cycle = path.clone();
            cycle.insert((0, 4));
            assert!(edges == path || edges == cycle, "seed {seed}: {edges:?}");
        }
    }

    #[test]
    fn full_density_small_circle_reaches_k4() {
        let found = (0..200).find(|&seed| {
            let params = GenParams {
                n: 4,
                seed,
                chord_density: 1.0,
                crossing_density: 1.0,
                ..GenParams::default()
            };
            gen_o1p(&params).unwrap().graph().edge_count() == 6
        });
        assert!(found.is_some());
    }

    #[test]
    fn seeded_2bp_instances_are_deterministic_and_valid() {
        for n_out in [3, 4, 6, 9, 13] {
            for n_in in [0, 1, 2, 3, 5, 8] {
                for density in [0.1, 0.5, 0.9] {
                    for seed in 0..6 {
                        let params = GenParams {
                            n_out,
                            n_in,
                            inter_edge_density: density,
                            shared_vertex_count: 0,
                            seed,
                            ..GenParams::default()
                        };
                        let a = gen_2bp(&params).unwrap();
                        let b = gen_2bp(&params).unwrap();
                        assert_eq!(a, b);
                        assert!(a.validate().is_ok());
                        assert_eq!(a.graph().n_slots(), n_out + n_in);
                    }
                }
            }
        }
    }

    #[test]
    fn shared_vertex_requests_merge_boundaries() {
        let mut successes = 0;
        for seed in 0..100 {
            let params = GenParams {
                n_out: 8,
                n_in: 6,
                inter_edge_density: 0.6,
                shared_vertex_count: 2,
                seed,
                ..GenParams::default()
            };
            match gen_2bp(&params) {
                Ok(emb) => {
                    successes += 1;
                    assert!(emb.validate().is_ok());
                    assert_eq!(emb.graph().n_slots(), 12);
                    assert_eq!(emb.shared_vertices().len(), 2, "seed {seed}");
                }
                Err(GenError::SharedInfeasible { requested: 2, .. }) => {}
                Err(other) => panic!("seed {seed}: {other}"),
            }
        }
        assert!(successes > 0);
    }

    #[test]
    fn infeasible_shared_requests_name_the_shortfall() {
        let params = GenParams {
            n_out: 5,
            n_in: 0,
            shared_vertex_count: 1,
            ..GenParams::default()
        };
        assert_eq!(
            gen_2bp(&params).unwrap_err(),
            GenError::SharedInfeasible {
                requested: 1,
                available: 0
            }
        );
        let params = GenParams {
            n_out: 5,
            n_in: 5,
            inter_edge_density: 0.0,
            shared_vertex_count: 1,
            ..GenParams::default()
        };
        assert_eq!(
            gen_2bp(&params).unwrap_err(),
            GenError::SharedInfeasible {
                requested: 1,
                available: 0
            }
        );
    }

    #[test]
    fn degenerate_corner_pins_the_exceptional_families() {
        let prism = GenParams {
            n_out: 6,
            n_in: 6,
            inter_edge_density: 1.0,
            crossing_density: 0.0,
            shared_vertex_count: 0,
            ..GenParams::default()
        };
        let m = gen_2bp(&prism).unwrap();
        assert_eq!(
            recognize_special(m.graph()).unwrap().kind,
            SpecialKind::Prism(6)
        );
        let anti = GenParams {
            crossing_density: 0.7,
            ..prism
        };
        let p = gen_2bp(&anti).unwrap();
        assert_eq!(
            recognize_special(p.graph()).unwrap().kind,
            SpecialKind::Antiprism(6)
        );
    }

    #[test]
    fn staircase_plan_builds_the_antiprism() {
        let mut atts = vec![att(0, 0), att(1, 0), att(1, 1), att(2, 1), att(2, 2)];
        atts.push(Att {
            p: 0,
            q: 2,
            p_wrapped: true,
            q_wrapped: false,
        });
        let emb = embed_annulus(&AnnulusPlan {
            n_out: 3,
            n_in: 3,
            attachments: atts,
            merges: vec![],
        })
        .unwrap();
        assert_eq!(
            recognize_special(emb.graph()).unwrap().kind,
            SpecialKind::Antiprism(3)
        );
    }

    #[test]
    fn spoke_plan_builds_the_prism() {
        let emb = embed_annulus(&AnnulusPlan {
            n_out: 4,
            n_in: 4,
            attachments: (0..4).map(|i| att(i, i)).collect(),
            merges: vec![],
        })
        .unwrap();
        assert_eq!(
            recognize_special(emb.graph()).unwrap().kind,
            SpecialKind::Prism(4)
        );
    }

    #[test]
    fn merged_spoke_plan_contracts_the_attachment() {
        let emb = embed_annulus(&AnnulusPlan {
            n_out: 3,
            n_in: 3,
            attachments: vec![att(0, 0), att(1, 1), att(2, 2)],
            merges: vec![0],
        })
        .unwrap();
        assert_eq!(emb.graph().n_slots(), 5);
        assert_eq!(emb.graph().edge_count(), 8);
        assert!(emb.validate().is_ok());
        assert_eq!(emb.shared_vertices(), BTreeSet::from([0]));
    }

    #[test]
    fn enumeration_respects_the_size_cap() {
        let err = enumerate_small(GraphClass::OuterOnePlanar, 9, |_| {}).unwrap_err();
        assert_eq!(
            err,
            GenError::EnumerationTooLarge {
                requested: 9,
                cap: 8
            }
        );
    }

    #[test]
    fn small_streams_have_pinned_sizes() {
        let count = |class, n| {
            let mut c = 0usize;
            enumerate_small(class, n, |_| c += 1).unwrap();
            c
        };
        let o1p: Vec<usize> = (1..=6).map(|n| count(GraphClass::OuterOnePlanar, n)).collect();
        assert_eq!(o1p, vec![1, 3, 11, 75, 747, 8619]);
        let twobp: Vec<usize> = (1..=6)
            .map(|n| count(GraphClass::TwoBoundaryPlanar, n))
            .collect();
        assert_eq!(twobp, vec![1, 3, 11, 129, 1805, 31841]);
    }

    #[test]
    fn four_vertex_stream_contains_k4() {
        let mut found = false;
        enumerate_small(GraphClass::OuterOnePlanar, 4, |inst| {
            let g = inst.graph();
            found |= g.n_slots() == 4 && g.edge_count() == 6;
        })
        .unwrap();
        assert!(found);
    }

    #[test]
    fn six_vertex_stream_contains_both_exceptional_families() {
        let mut prism = false;
        let mut antiprism = false;
        enumerate_small(GraphClass::TwoBoundaryPlanar, 6, |inst| {
            if let Some(s) = recognize_special(inst.graph()) {
                match s.kind {
                    SpecialKind::Prism(3) => prism = true,
                    SpecialKind::Antiprism(3) => antiprism = true,
                    _ => {}
                }
            }
        })
        .unwrap();
        assert!(prism);
        assert!(antiprism);
    }

    #[test]
    fn every_streamed_instance_validates() {
        enumerate_small(GraphClass::OuterOnePlanar, 5, |inst| match inst {
            Instance::OuterOnePlanar(e) => assert!(e.validate().is_ok()),
            Instance::TwoBoundaryPlanar(_) => panic!("wrong class"),
        })
        .unwrap();
        enumerate_small(GraphClass::TwoBoundaryPlanar, 5, |inst| match inst {
            Instance::TwoBoundaryPlanar(e) => assert!(e.validate().is_ok()),
            Instance::OuterOnePlanar(_) => panic!("wrong class"),
        })
        .unwrap();
    }

    fn coverage_params(seed: u64) -> GenParams {
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_ffee);
        let n_out = r.gen_range(3..15);
        let (n_in, inter_edge_density) = if r.gen_bool(0.35) {
            (n_out, 0.8 + r.gen::<f64>() * 0.19)
        } else if r.gen_bool(0.25) {
            (r.gen_range(0..3), 0.2 + r.gen::<f64>() * 0.7)
        } else {
            (r.gen_range(3..13), 0.2 + r.gen::<f64>() * 0.7)
        };
        GenParams {
            n: 0,
            n_out,
            n_in,
            chord_density: 0.0,
            crossing_density: r.gen::<f64>(),
            inter_edge_density,
            shared_vertex_count: if r.gen_bool(0.15) { r.gen_range(1..3) } else { 0 },
            seed,
        }
    }

    #[test]
    fn seeded_instances_cover_every_configuration_tag() {
        let wanted = [
            ConfigTag::A2,
            ConfigTag::B2,
            ConfigTag::C2,
            ConfigTag::D2,
            ConfigTag::E2,
            ConfigTag::G2,
            ConfigTag::H2,
            ConfigTag::I2,
        ];
        let mut tags: BTreeSet<ConfigTag> = BTreeSet::new();
        let mut used = 0u64;
        for seed in 0..100_000u64 {
            used = seed + 1;
            let Ok(emb) = gen_2bp(&coverage_params(seed)) else {
                continue;
            };
            if let Ok(Detection::Config(c)) = find_config_2bp(&emb) {
                tags.insert(c.tag());
            }
            if seed % 4 == 0 {
                if let Ok((_, trace)) = odd_five_color_2bp(&emb) {
                    for step in &trace.steps {
                        tags.insert(step.config.tag());
                    }
                }
            }
            if wanted.iter().all(|t| tags.contains(t)) {
                break;
            }
        }
        let missing: Vec<_> = wanted.iter().filter(|t| !tags.contains(t)).collect();
        assert!(
            missing.is_empty(),
            "missing {missing:?} after {used} seeds"
        );
    }

    proptest! {
        #[test]
        fn any_seed_yields_a_valid_o1p_instance(seed in any::<u64>(), n in 0usize..40) {
            let params = GenParams { n, seed, ..GenParams::default() };
            let a = gen_o1p(&params).unwrap();
            prop_assert!(a.validate().is_ok());
            prop_assert_eq!(&a, &gen_o1p(&params).unwrap());
        }

        #[test]
        fn any_seed_yields_a_valid_2bp_instance(
            seed in any::<u64>(),
            n_out in 3usize..18,
            n_in in 0usize..12,
            density in 0.0f64..=1.0,
        ) {
            let params = GenParams {
                n_out,
                n_in,
                inter_edge_density: density,
                shared_vertex_count: 0,
                seed,
                ..GenParams::default()
            };
            let a = gen_2bp(&params).unwrap();
            prop_assert!(a.validate().is_ok());
            prop_assert_eq!(&a, &gen_2bp(&params).unwrap());
        }
    }
}

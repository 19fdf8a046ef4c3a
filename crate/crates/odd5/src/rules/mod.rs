//! Reduction machinery: one rule per configuration shape, registered behind
//! a common trait per embedding class. The solver walks a registry in its
//! fixed search order; each rule detects its pattern, shrinks the embedding,
//! and later lifts a coloring of the reduced graph back over the pattern.

mod detect;
mod extend;
mod shapes;

pub use extend::{
    extend_adjacent_triangles, extend_deg3_two_odd, extend_degree1, extend_fan, extend_path_deg2,
    extend_step, extend_triangle_33, extend_triangle_deg2, extend_triple_triangle, frame_of,
};
pub use shapes::{rule_for_tag_2bp, rule_for_tag_o1p, RULES_2BP, RULES_O1P};

use crate::coloring::Coloring;
use crate::config::{ConfigTag, Configuration};
use crate::embed::o1p::OuterOnePlanarEmbedding;
use crate::embed::twobp::TwoBoundaryEmbedding;
use crate::embed::{EmbedError, Embedding};
use crate::graph::{Graph, GraphError, Vertex};
use crate::special::{recognize_special, SpecialGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("rule expects a {expected} configuration, got {got}")]
    WrongShape { expected: &'static str, got: ConfigTag },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("extension for {tag} failed even after exhausting the frame")]
    ExtensionFailed { tag: ConfigTag },
    #[error("internal error: {0}")]
    Internal(String),
}

/// No rule matched. The catalog is complete for valid inputs (outside the
/// two special families), so the carried instance is a counterexample
/// candidate worth keeping.
#[derive(Debug, Error)]
#[error("no reducible configuration found ({} live vertices)", graph.live_count())]
pub struct DetectorExhausted {
    pub graph: Graph,
}

/// One reduction: the detected configuration plus exactly what was removed
/// from and added to the graph, so a trace can be replayed and audited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub config: Configuration,
    pub removed_vertices: Vec<Vertex>,
    pub removed_edges: Vec<(Vertex, Vertex)>,
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub k: u32,
}

impl ReductionStep {
    /// By how much |V| + |E| shrinks.
    pub fn decrement(&self) -> usize {
        self.removed_vertices.len() + self.removed_edges.len() - self.added_edges.len()
    }

    /// The decrement each shape is committed to. E2 removes one vertex
    /// instead of two when the triangle apex has odd degree.
    pub fn expected_decrement(&self) -> usize {
        match self.config.tag() {
            ConfigTag::A1 | ConfigTag::A2 => 2,
            ConfigTag::B1 | ConfigTag::B2 => 3,
            ConfigTag::C1 | ConfigTag::C2 => 2,
            ConfigTag::D2 => 4,
            ConfigTag::D1 => 7,
            ConfigTag::E2 => {
                if self.removed_vertices.len() == 1 {
                    4
                } else {
                    7
                }
            }
            ConfigTag::G2 | ConfigTag::H2 | ConfigTag::I2 => 4,
        }
    }
}

/// Rebuilds the reduced graph H a step describes: delete the removed
/// vertices, then add the replacement edges. Cross-checks the step's edge
/// bookkeeping against what deletion actually removed.
pub fn reduced_graph(g: &Graph, step: &ReductionStep) -> Result<Graph, RuleError> {
    let mut h = g.delete_vertices(&step.removed_vertices)?;
    for &(a, b) in &step.added_edges {
        h.add_edge(a, b)?;
    }
    let expected = g.edge_count() - step.removed_edges.len() + step.added_edges.len();
    if h.edge_count() != expected {
        return Err(RuleError::Internal(format!(
            "step bookkeeping mismatch: reduced graph has {} edges, step implies {}",
            h.edge_count(),
            expected
        )));
    }
    Ok(h)
}

/// A reduction strategy for one configuration shape. `find` locates the
/// lexicographically smallest match, `reduce` shrinks the embedding, and
/// `extend` lifts a coloring of the reduced graph back to the host.
pub trait ReductionRule<E: Embedding>: Sync {
    fn tag(&self) -> ConfigTag;
    fn name(&self) -> &'static str;
    fn find(&self, emb: &E) -> Option<Configuration>;
    fn reduce(&self, emb: &E, cfg: &Configuration, k: u32)
        -> Result<(ReductionStep, E), RuleError>;
    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError>;

    /// Certifies a configuration against this rule's shape in the embedded
    /// graph. The base check is the structural predicate; rules with
    /// embedding-level side conditions add them.
    fn check(&self, emb: &E, cfg: &Configuration) -> bool {
        cfg.tag() == self.tag() && cfg.check(emb.graph())
    }
}

/// Finds one reducible configuration in an outer-1-planar embedding,
/// searching shapes in the fixed order A1, B1, C1, D1.
pub fn find_config_o1p(
    emb: &OuterOnePlanarEmbedding,
) -> Result<Configuration, DetectorExhausted> {
    for rule in RULES_O1P {
        if let Some(cfg) = rule.find(emb) {
            assert!(rule.check(emb, &cfg), "detector returned an uncertified {}", cfg.tag());
            return Ok(cfg);
        }
    }
    Err(DetectorExhausted { graph: emb.graph().clone() })
}

/// What the 2-boundary detector can report: an ordinary configuration or
/// one of the two exceptional families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection {
    Config(Configuration),
    Special(SpecialGraph),
}

/// Finds one reducible configuration in a 2-boundary embedding, searching
/// A2 through I2 in order, after first recognizing prisms and antiprisms
/// (which match no shape and are colored directly).
pub fn find_config_2bp(emb: &TwoBoundaryEmbedding) -> Result<Detection, DetectorExhausted> {
    if let Some(s) = recognize_special(emb.graph()) {
        return Ok(Detection::Special(s));
    }
    for rule in RULES_2BP {
        if let Some(cfg) = rule.find(emb) {
            assert!(rule.check(emb, &cfg), "detector returned an uncertified {}", cfg.tag());
            return Ok(Detection::Config(cfg));
        }
    }
    Err(DetectorExhausted { graph: emb.graph().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_odd;
    use crate::special::{antiprism_embedding, prism_embedding, prism_graph, SpecialKind};

    fn colored(k: u32, n: usize, pairs: &[(Vertex, u32)]) -> Coloring {
        let mut c = Coloring::new(k, n);
        for &(v, col) in pairs {
            c.set(v, col);
        }
        c
    }

    fn assert_in_frame(g: &Graph, step: &ReductionStep, tau_h: &Coloring, out: &Coloring) {
        let frame = frame_of(step);
        for v in g.vertices() {
            if !frame.contains(&v) {
                assert_eq!(out.get(v), tau_h.get(v), "vertex {v} outside the frame changed");
            }
        }
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn o1p(g: &Graph, order: &[Vertex]) -> OuterOnePlanarEmbedding {
        OuterOnePlanarEmbedding::new(g.clone(), order.to_vec()).unwrap()
    }

    #[test]
    fn registries_follow_the_search_order() {
        let o1p_tags: Vec<ConfigTag> = RULES_O1P.iter().map(|r| r.tag()).collect();
        assert_eq!(o1p_tags, [ConfigTag::A1, ConfigTag::B1, ConfigTag::C1, ConfigTag::D1]);
        let twobp_tags: Vec<ConfigTag> = RULES_2BP.iter().map(|r| r.tag()).collect();
        assert_eq!(
            twobp_tags,
            [
                ConfigTag::A2,
                ConfigTag::B2,
                ConfigTag::C2,
                ConfigTag::D2,
                ConfigTag::E2,
                ConfigTag::G2,
                ConfigTag::H2,
                ConfigTag::I2,
            ]
        );
        assert_eq!(rule_for_tag_o1p(ConfigTag::D1).unwrap().name(), "chorded-square");
        assert!(rule_for_tag_o1p(ConfigTag::G2).is_none());
        assert_eq!(rule_for_tag_2bp(ConfigTag::I2).unwrap().name(), "fan");
    }

    #[test]
    fn finds_leaf_first_in_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let emb = o1p(&g, &[0, 1, 2]);
        let cfg = find_config_o1p(&emb).unwrap();
        assert_eq!(cfg, Configuration::A1 { v: 0, u: 1 });
    }

    #[test]
    fn finds_chorded_square_in_k4() {
        let emb = o1p(&k4(), &[0, 1, 2, 3]);
        let cfg = find_config_o1p(&emb).unwrap();
        assert_eq!(cfg, Configuration::D1 { u: 0, x: 1, v: 2, y: 3 });
    }

    #[test]
    fn finds_suppressible_vertex_in_c5() {
        let emb = OuterOnePlanarEmbedding::cycle(5);
        let cfg = find_config_o1p(&emb).unwrap();
        assert_eq!(cfg, Configuration::C1 { v: 0, u: 1, w: 4 });
    }

    #[test]
    fn special_families_preempt_the_rules() {
        // The cube is 3-regular, so the two-odd-neighbors shape matches
        // everywhere; recognition still must win.
        let cube = prism_embedding(4);
        let rule = rule_for_tag_2bp(ConfigTag::D2).unwrap();
        assert!(rule.find(&cube).is_some());
        match find_config_2bp(&cube).unwrap() {
            Detection::Special(s) => assert_eq!(s.kind, SpecialKind::Prism(4)),
            other => panic!("expected the prism, got {other:?}"),
        }
        match find_config_2bp(&antiprism_embedding(3)).unwrap() {
            Detection::Special(s) => assert_eq!(s.kind, SpecialKind::Antiprism(3)),
            other => panic!("expected the octahedron, got {other:?}"),
        }
        match find_config_2bp(&antiprism_embedding(4)).unwrap() {
            Detection::Special(s) => assert_eq!(s.kind, SpecialKind::Antiprism(4)),
            other => panic!("expected the antiprism, got {other:?}"),
        }
    }

    #[test]
    fn exhausted_detector_returns_the_instance() {
        let emb = o1p(&Graph::new(1), &[0]);
        let err = find_config_o1p(&emb).unwrap_err();
        assert_eq!(err.graph.live_count(), 1);
    }

    #[test]
    fn suppression_step_bookkeeping() {
        let emb = OuterOnePlanarEmbedding::cycle(5);
        let cfg = find_config_o1p(&emb).unwrap();
        let rule = rule_for_tag_o1p(ConfigTag::C1).unwrap();
        let (step, reduced) = rule.reduce(&emb, &cfg, 5).unwrap();
        assert_eq!(step.removed_vertices, [0]);
        assert_eq!(step.removed_edges, [(0, 1), (0, 4)]);
        assert_eq!(step.added_edges, [(1, 4)]);
        assert_eq!(step.decrement(), 2);
        assert_eq!(step.decrement(), step.expected_decrement());
        let h = reduced_graph(emb.graph(), &step).unwrap();
        assert_eq!(h.live_count(), 4);
        assert!(h.adjacent(1, 4));
        let lhs: Vec<_> = reduced.graph().edges().collect();
        let rhs: Vec<_> = h.edges().collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chorded_square_step_bookkeeping() {
        let emb = o1p(&k4(), &[0, 1, 2, 3]);
        let cfg = find_config_o1p(&emb).unwrap();
        let rule = rule_for_tag_o1p(ConfigTag::D1).unwrap();
        let (step, reduced) = rule.reduce(&emb, &cfg, 5).unwrap();
        assert_eq!(step.removed_vertices, [0, 2]);
        assert_eq!(step.removed_edges.len(), 5);
        assert_eq!(step.decrement(), 7);
        assert_eq!(step.decrement(), step.expected_decrement());
        assert_eq!(reduced.graph().live_count(), 2);
        assert!(reduced.graph().adjacent(1, 3));
    }

    #[test]
    fn triangle_tails_removes_by_apex_parity() {
        // Even apex: triangle 0-1-2, pendants 3 on 1, 4 on 2, 5 and 6 on 0.
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (0, 5), (0, 6)],
        )
        .unwrap();
        let emb = o1p(&g, &[5, 0, 6, 1, 3, 2, 4]);
        let rule = rule_for_tag_2bp(ConfigTag::E2).unwrap();
        let even = Configuration::E2 { u: 0, v: 1, w: 2, x: 3, y: 4 };
        let tails = shapes::TriangleTails;
        let (step, _) = ReductionRule::<OuterOnePlanarEmbedding>::reduce(&tails, &emb, &even, 5)
            .unwrap();
        assert_eq!(step.removed_vertices, [1, 2]);
        assert_eq!(step.decrement(), 7);
        assert_eq!(step.expected_decrement(), 7);
        // Odd apex (K4): removing one corner suffices.
        let emb4 = o1p(&k4(), &[0, 1, 2, 3]);
        let odd = Configuration::E2 { u: 0, v: 1, w: 2, x: 3, y: 3 };
        let (step4, _) =
            ReductionRule::<OuterOnePlanarEmbedding>::reduce(&tails, &emb4, &odd, 5).unwrap();
        assert_eq!(step4.removed_vertices, [1]);
        assert_eq!(step4.decrement(), 4);
        assert_eq!(step4.expected_decrement(), 4);
        let _ = rule;
    }

    #[test]
    fn degree_one_extension_pins() {
        // A lonely edge: the neighbor holds color 1, so v takes 2.
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let step = ReductionStep {
            config: Configuration::A1 { v: 1, u: 0 },
            removed_vertices: vec![1],
            removed_edges: vec![(0, 1)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 2, &[(0, 1)]);
        let out = extend_degree1(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(1), Some(2));

        // Star whose center sees color 2 an odd number of times: v skips
        // both 1 and 2.
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let step = ReductionStep {
            config: Configuration::A1 { v: 4, u: 0 },
            removed_vertices: vec![4],
            removed_edges: vec![(0, 4)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 5, &[(0, 1), (1, 2), (2, 3), (3, 3)]);
        let out = extend_degree1(&star, &step, &tau_h).unwrap();
        assert_eq!(out.get(4), Some(3));
        assert_in_frame(&star, &step, &tau_h, &out);

        // Center sees {3,3,4}: odd color 4, so v takes 2.
        let tau_h = colored(5, 5, &[(0, 1), (1, 3), (2, 3), (3, 4)]);
        let out = extend_degree1(&star, &step, &tau_h).unwrap();
        assert_eq!(out.get(4), Some(2));
    }

    #[test]
    fn triangle_deg2_extension_pin() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let step = ReductionStep {
            config: Configuration::B1 { v: 2, u: 0, w: 1 },
            removed_vertices: vec![2],
            removed_edges: vec![(0, 2), (1, 2)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 3, &[(0, 1), (1, 2)]);
        let out = extend_triangle_deg2(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(2), Some(3));
        assert!(verify_odd(&g, &out).is_valid());
    }

    #[test]
    fn path_deg2_extension_cross_matched_case() {
        // In the reduced graph u and w watch each other's color as their
        // unique odd color, so v gets the first color above both.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let step = ReductionStep {
            config: Configuration::C1 { v: 0, u: 1, w: 2 },
            removed_vertices: vec![0],
            removed_edges: vec![(0, 1), (0, 2)],
            added_edges: vec![(1, 2)],
            k: 5,
        };
        let tau_h = colored(5, 7, &[(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4)]);
        let out = extend_path_deg2(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(0), Some(3));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn path_deg2_extension_on_c5() {
        let emb = OuterOnePlanarEmbedding::cycle(5);
        let cfg = find_config_o1p(&emb).unwrap();
        let rule = rule_for_tag_o1p(ConfigTag::C1).unwrap();
        let (step, _) = rule.reduce(&emb, &cfg, 5).unwrap();
        let tau_h = colored(5, 5, &[(1, 1), (2, 2), (3, 3), (4, 4)]);
        let out = rule.extend(emb.graph(), &step, &tau_h).unwrap();
        assert!(verify_odd(emb.graph(), &out).is_valid());
        assert_eq!(out.get(0), Some(5));
    }

    #[test]
    fn path_deg2_rejects_adjacent_ends() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let step = ReductionStep {
            config: Configuration::C1 { v: 0, u: 1, w: 2 },
            removed_vertices: vec![0],
            removed_edges: vec![(0, 1), (0, 2)],
            added_edges: vec![(1, 2)],
            k: 5,
        };
        let tau_h = colored(5, 3, &[(1, 1), (2, 2)]);
        assert!(matches!(
            extend_path_deg2(&g, &step, &tau_h),
            Err(RuleError::Precondition(_))
        ));
    }

    #[test]
    fn deg3_two_odd_extension_pin() {
        let g = k4();
        let step = ReductionStep {
            config: Configuration::D2 { v: 3, x: 0, y: 1, z: 2 },
            removed_vertices: vec![3],
            removed_edges: vec![(0, 3), (1, 3), (2, 3)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 4, &[(0, 1), (1, 2), (2, 3)]);
        let out = extend_deg3_two_odd(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(3), Some(4));
        assert!(verify_odd(&g, &out).is_valid());
    }

    #[test]
    fn deg3_two_odd_requires_odd_neighbors() {
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
        )
        .unwrap();
        let step = ReductionStep {
            config: Configuration::D2 { v: 3, x: 0, y: 1, z: 2 },
            removed_vertices: vec![3],
            removed_edges: vec![(0, 3), (1, 3), (2, 3)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 5, &[(0, 1), (1, 2), (2, 3), (4, 2)]);
        assert!(matches!(
            extend_deg3_two_odd(&g, &step, &tau_h),
            Err(RuleError::Precondition(_))
        ));
    }

    #[test]
    fn chorded_square_extension_on_k4() {
        let emb = o1p(&k4(), &[0, 1, 2, 3]);
        let cfg = find_config_o1p(&emb).unwrap();
        let rule = rule_for_tag_o1p(ConfigTag::D1).unwrap();
        let (step, _) = rule.reduce(&emb, &cfg, 5).unwrap();
        let tau_h = colored(5, 4, &[(1, 1), (3, 2)]);
        let out = rule.extend(emb.graph(), &step, &tau_h).unwrap();
        assert!(verify_odd(emb.graph(), &out).is_valid());
        assert_eq!(out.get(0), Some(3));
        assert_eq!(out.get(2), Some(4));
        assert_eq!(out.get(1), Some(1));
        assert_eq!(out.get(3), Some(2));
    }

    #[test]
    fn triangle_33_odd_apex_delegates() {
        let g = k4();
        let e2_step = ReductionStep {
            config: Configuration::E2 { u: 0, v: 1, w: 2, x: 3, y: 3 },
            removed_vertices: vec![1],
            removed_edges: vec![(0, 1), (1, 2), (1, 3)],
            added_edges: vec![],
            k: 5,
        };
        let d2_step = ReductionStep {
            config: Configuration::D2 { v: 1, x: 0, y: 2, z: 3 },
            removed_vertices: vec![1],
            removed_edges: vec![(0, 1), (1, 2), (1, 3)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 4, &[(0, 1), (2, 2), (3, 3)]);
        let via_e2 = extend_triangle_33(&g, &e2_step, &tau_h).unwrap();
        let via_d2 = extend_deg3_two_odd(&g, &d2_step, &tau_h).unwrap();
        assert_eq!(via_e2.get(1), Some(4));
        assert_eq!(via_e2.get(1), via_d2.get(1));
        assert!(verify_odd(&g, &via_e2).is_valid());
    }

    /// Two triangles over the edge uv with the tip x, plus enough hangers to
    /// pin every color: u=1, v=2, y=3, x'=4 with a pendant 8 giving x' the
    /// odd color 5, and spares 5, 6, 7.
    fn glued_triangles_host() -> (Graph, ReductionStep) {
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
                (4, 8),
            ],
        )
        .unwrap();
        let step = ReductionStep {
            config: Configuration::G2 { x: 0, u: 1, v: 2, y: 3, xp: 4, up: 5, vp: 6 },
            removed_vertices: vec![0],
            removed_edges: vec![(0, 1), (0, 2), (0, 4)],
            added_edges: vec![],
            k: 5,
        };
        (g, step)
    }

    #[test]
    fn adjacent_triangles_direct_case() {
        let (g, step) = glued_triangles_host();
        let tau_h = colored(
            5,
            9,
            &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 2), (6, 4), (7, 1), (8, 3)],
        );
        let out = extend_adjacent_triangles(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(0), Some(5));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn adjacent_triangles_tight_recoloring() {
        let (g, step) = glued_triangles_host();
        // Forbidden set {1,2,3,4,5} is the whole palette and u's spare
        // repeats color 2, so the proof erases u: u moves to 4, x takes 1.
        let tau_h = colored(
            5,
            9,
            &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 2), (6, 4), (7, 1), (8, 5)],
        );
        let out = extend_adjacent_triangles(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(0), Some(1));
        assert_eq!(out.get(1), Some(4));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn adjacent_triangles_rejects_even_companion() {
        let (mut g, step) = glued_triangles_host();
        g.remove_edge(3, 7).unwrap();
        let tau_h = colored(5, 9, &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 2), (6, 4), (8, 5)]);
        assert!(matches!(
            extend_adjacent_triangles(&g, &step, &tau_h),
            Err(RuleError::Precondition(_))
        ));
    }

    /// Central triangle v=1, x=3, y=4 with side triangles through u=0 and
    /// w=2; spares x'=5 (plus hangers 9, 10 shaping its odd color), y'=6,
    /// u'=7 with pendant 8.
    fn triple_triangle_host() -> (Graph, ReductionStep) {
        let g = Graph::from_edges(
            11,
            &[
                (1, 3),
                (1, 4),
                (3, 4),
                (0, 3),
                (0, 1),
                (2, 1),
                (2, 4),
                (3, 5),
                (4, 6),
                (0, 7),
                (7, 8),
                (5, 9),
                (5, 10),
            ],
        )
        .unwrap();
        let step = ReductionStep {
            config: Configuration::H2 { u: 0, v: 1, w: 2, x: 3, y: 4, xp: 5, yp: 6, up: 7 },
            removed_vertices: vec![0],
            removed_edges: vec![(0, 1), (0, 3), (0, 7)],
            added_edges: vec![],
            k: 5,
        };
        (g, step)
    }

    #[test]
    fn triple_triangle_direct_case() {
        let (g, step) = triple_triangle_host();
        let tau_h = colored(
            5,
            11,
            &[(1, 3), (2, 4), (3, 1), (4, 2), (5, 3), (6, 1), (7, 2), (8, 4), (9, 1), (10, 4)],
        );
        let out = extend_triple_triangle(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(0), Some(5));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn triple_triangle_tight_subcase() {
        let (g, step) = triple_triangle_host();
        // All five forbidden entries distinct, x carries odd color 2, v
        // carries none, and x' sees odd color 4: x moves to 5, u takes 1.
        let tau_h = colored(
            5,
            11,
            &[(1, 3), (2, 4), (3, 1), (4, 2), (5, 3), (6, 1), (7, 5), (8, 4), (9, 1), (10, 4)],
        );
        let out = extend_triple_triangle(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(3), Some(5));
        assert_eq!(out.get(0), Some(1));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    /// Fan around v=0 over the path u=1, x=2, y=3, z=4, w=5, with spares
    /// x'=6 and z'=7.
    fn fan_host() -> (Graph, ReductionStep) {
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 6),
                (4, 7),
            ],
        )
        .unwrap();
        let step = ReductionStep {
            config: Configuration::I2 { v: 0, u: 1, x: 2, y: 3, z: 4, w: 5, xp: 6, zp: 7 },
            removed_vertices: vec![3],
            removed_edges: vec![(0, 3), (2, 3), (3, 4)],
            added_edges: vec![],
            k: 5,
        };
        (g, step)
    }

    #[test]
    fn fan_direct_with_six_colors() {
        let (g, mut step) = fan_host();
        step.k = 6;
        let tau_h = colored(6, 8, &[(0, 2), (1, 4), (2, 1), (4, 3), (5, 5), (6, 2), (7, 2)]);
        let out = extend_fan(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(3), Some(6));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn fan_tight_first_branch() {
        let (g, step) = fan_host();
        // Tight pattern with {odd(x'), odd(u)} = {1, 0} away from {3, 5}:
        // x moves to 3, y takes 1.
        let tau_h = colored(5, 8, &[(0, 2), (1, 4), (2, 1), (4, 3), (5, 5), (6, 2), (7, 2)]);
        let out = extend_fan(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(2), Some(3));
        assert_eq!(out.get(3), Some(1));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    /// The doubly tight fan: both easy recolorings are blocked, forcing the
    /// third branch. Hangers push the odd colors of x', u, z', and w onto
    /// exactly the blocking sets.
    #[test]
    fn fan_tight_third_branch() {
        let g = Graph::from_edges(
            18,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 6),
                (4, 7),
                (6, 8),
                (6, 9),
                (1, 10),
                (1, 11),
                (1, 12),
                (7, 13),
                (7, 14),
                (5, 15),
                (5, 16),
                (5, 17),
            ],
        )
        .unwrap();
        let step = ReductionStep {
            config: Configuration::I2 { v: 0, u: 1, x: 2, y: 3, z: 4, w: 5, xp: 6, zp: 7 },
            removed_vertices: vec![3],
            removed_edges: vec![(0, 3), (2, 3), (3, 4)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(
            5,
            18,
            &[
                (0, 2),
                (1, 4),
                (2, 1),
                (4, 3),
                (5, 5),
                (6, 2),
                (7, 2),
                (8, 1),
                (9, 3),
                (10, 2),
                (11, 1),
                (12, 5),
                (13, 3),
                (14, 1),
                (15, 2),
                (16, 3),
                (17, 4),
            ],
        );
        let out = extend_fan(&g, &step, &tau_h).unwrap();
        assert_eq!(out.get(2), Some(5));
        assert_eq!(out.get(0), Some(1));
        assert_eq!(out.get(3), Some(2));
        assert!(verify_odd(&g, &out).is_valid());
        assert_in_frame(&g, &step, &tau_h, &out);
    }

    #[test]
    fn wrong_shape_is_refused() {
        let g = k4();
        let step = ReductionStep {
            config: Configuration::B1 { v: 0, u: 1, w: 2 },
            removed_vertices: vec![0],
            removed_edges: vec![(0, 1), (0, 2), (0, 3)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 4, &[(1, 1), (2, 2), (3, 3)]);
        assert!(matches!(
            extend_degree1(&g, &step, &tau_h),
            Err(RuleError::WrongShape { .. })
        ));
    }

    #[test]
    fn palette_mismatch_is_refused() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let step = ReductionStep {
            config: Configuration::A1 { v: 1, u: 0 },
            removed_vertices: vec![1],
            removed_edges: vec![(0, 1)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(4, 2, &[(0, 1)]);
        assert!(matches!(
            extend_degree1(&g, &step, &tau_h),
            Err(RuleError::Precondition(_))
        ));
    }

    #[test]
    fn unverified_reduced_coloring_is_refused() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let step = ReductionStep {
            config: Configuration::B1 { v: 2, u: 0, w: 1 },
            removed_vertices: vec![2],
            removed_edges: vec![(0, 2), (1, 2)],
            added_edges: vec![],
            k: 5,
        };
        let tau_h = colored(5, 3, &[(0, 1), (1, 1)]);
        assert!(matches!(
            extend_triangle_deg2(&g, &step, &tau_h),
            Err(RuleError::Precondition(_))
        ));
    }

    #[test]
    fn reduced_graph_rejects_bad_bookkeeping() {
        let g = k4();
        let step = ReductionStep {
            config: Configuration::D2 { v: 3, x: 0, y: 1, z: 2 },
            removed_vertices: vec![3],
            removed_edges: vec![(0, 3)],
            added_edges: vec![],
            k: 5,
        };
        assert!(matches!(reduced_graph(&g, &step), Err(RuleError::Internal(_))));
    }

    #[test]
    fn detection_is_stable_under_candidate_order() {
        // The prism over a triangle has many triangles; the detector must
        // bind the lexicographically smallest tuple.
        let g = prism_graph(3);
        let cfg = detect::find_triangle_33(&g);
        assert_eq!(cfg, Some(Configuration::E2 { u: 0, v: 1, w: 2, x: 4, y: 5 }));
        let again = detect::find_triangle_33(&g);
        assert_eq!(cfg, again);
    }
}

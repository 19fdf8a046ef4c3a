//! The concrete reduction rules and the two registries. Rules shared by
//! both embedding classes carry their catalog tag; everything else about a
//! rule is generic over the embedding it edits.

use std::collections::BTreeSet;

use crate::coloring::Coloring;
use crate::config::{ConfigTag, Configuration};
use crate::embed::o1p::OuterOnePlanarEmbedding;
use crate::embed::twobp::TwoBoundaryEmbedding;
use crate::embed::Embedding;
use crate::graph::{Graph, Vertex};

use super::detect;
use super::extend;
use super::{ReductionRule, ReductionStep, RuleError};

fn incident_edges(g: &Graph, vs: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut set = BTreeSet::new();
    for &v in vs {
        for n in g.neighbors(v) {
            set.insert((v.min(n), v.max(n)));
        }
    }
    set.into_iter().collect()
}

fn certify<E: Embedding>(
    rule: &dyn ReductionRule<E>,
    emb: &E,
    cfg: &Configuration,
) -> Result<(), RuleError> {
    if rule.check(emb, cfg) {
        Ok(())
    } else {
        Err(RuleError::Precondition(format!(
            "configuration {} does not certify against rule {}",
            cfg.tag(),
            rule.name()
        )))
    }
}

/// Deletes `removed` and records the step bookkeeping.
fn removal_step<E: Embedding>(
    emb: &E,
    cfg: &Configuration,
    k: u32,
    removed: Vec<Vertex>,
) -> Result<(ReductionStep, E), RuleError> {
    let removed_edges = incident_edges(emb.graph(), &removed);
    let out = emb.delete_vertices(&removed)?;
    let step = ReductionStep {
        config: cfg.clone(),
        removed_vertices: removed,
        removed_edges,
        added_edges: Vec::new(),
        k,
    };
    Ok((step, out))
}

/// Degree-1 vertex removal (tags A1, A2).
pub struct DegreeOne {
    pub tag: ConfigTag,
}

impl<E: Embedding> ReductionRule<E> for DegreeOne {
    fn tag(&self) -> ConfigTag {
        self.tag
    }

    fn name(&self) -> &'static str {
        "degree-one"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        let (v, u) = detect::find_degree1(emb.graph())?;
        Some(match self.tag {
            ConfigTag::A1 => Configuration::A1 { v, u },
            _ => Configuration::A2 { v, u },
        })
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let (Configuration::A1 { v, .. } | Configuration::A2 { v, .. }) = *cfg else {
            return Err(RuleError::WrongShape { expected: "degree-one", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![v])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_degree1(g, step, tau_h)
    }
}

/// Degree-2 vertex on a triangle (tags B1, B2).
pub struct TriangleDegTwo {
    pub tag: ConfigTag,
}

impl<E: Embedding> ReductionRule<E> for TriangleDegTwo {
    fn tag(&self) -> ConfigTag {
        self.tag
    }

    fn name(&self) -> &'static str {
        "triangle-degree-two"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        let (v, u, w) = detect::find_triangle_deg2(emb.graph())?;
        Some(match self.tag {
            ConfigTag::B1 => Configuration::B1 { v, u, w },
            _ => Configuration::B2 { v, u, w },
        })
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let (Configuration::B1 { v, .. } | Configuration::B2 { v, .. }) = *cfg else {
            return Err(RuleError::WrongShape { expected: "triangle-degree-two", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![v])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_triangle_deg2(g, step, tau_h)
    }
}

/// Degree-2 vertex suppression (tags C1, C2): only applicable where the
/// edited drawing stays inside the embedding class, which the finder and
/// the certifier both re-check.
pub struct PathDegTwo {
    pub tag: ConfigTag,
}

impl<E: Embedding> ReductionRule<E> for PathDegTwo {
    fn tag(&self) -> ConfigTag {
        self.tag
    }

    fn name(&self) -> &'static str {
        "path-degree-two"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        let (v, u, w) = detect::find_path_deg2(emb)?;
        Some(match self.tag {
            ConfigTag::C1 => Configuration::C1 { v, u, w },
            _ => Configuration::C2 { v, u, w },
        })
    }

    fn check(&self, emb: &E, cfg: &Configuration) -> bool {
        if cfg.tag() != self.tag || !cfg.check(emb.graph()) {
            return false;
        }
        let (Configuration::C1 { v, .. } | Configuration::C2 { v, .. }) = *cfg else {
            return false;
        };
        matches!(emb.suppress_degree2(v), Ok(s) if s.class_valid)
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let (Configuration::C1 { v, u, w } | Configuration::C2 { v, u, w }) = *cfg else {
            return Err(RuleError::WrongShape { expected: "path-degree-two", got: cfg.tag() });
        };
        let s = emb.suppress_degree2(v)?;
        if !s.class_valid {
            return Err(RuleError::Precondition(
                "suppression leaves the embedding class".to_string(),
            ));
        }
        let (a, b) = s.added_edge;
        let step = ReductionStep {
            config: cfg.clone(),
            removed_vertices: vec![v],
            removed_edges: vec![(v.min(u), v.max(u)), (v.min(w), v.max(w))],
            added_edges: vec![(a.min(b), a.max(b))],
            k,
        };
        Ok((step, s.embedding))
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_path_deg2(g, step, tau_h)
    }
}

/// 4-cycle with a chord between its two degree-3 ends (tag D1). Both chord
/// ends go; the reduced picture is the triangle shape with equal spares.
pub struct ChordedSquare;

impl<E: Embedding> ReductionRule<E> for ChordedSquare {
    fn tag(&self) -> ConfigTag {
        ConfigTag::D1
    }

    fn name(&self) -> &'static str {
        "chorded-square"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_chorded_square(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::D1 { u, v, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "chorded-square", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![u, v])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_triangle_33(g, step, tau_h)
    }
}

/// Degree-3 vertex with two odd-degree neighbors (tag D2).
pub struct TwoOddNeighbors;

impl<E: Embedding> ReductionRule<E> for TwoOddNeighbors {
    fn tag(&self) -> ConfigTag {
        ConfigTag::D2
    }

    fn name(&self) -> &'static str {
        "two-odd-neighbors"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_deg3_two_odd(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::D2 { v, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "two-odd-neighbors", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![v])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_deg3_two_odd(g, step, tau_h)
    }
}

/// Triangle with two degree-3 corners (tag E2). With an even-degree apex
/// both corners go; with an odd-degree apex removing one corner already
/// leaves a degree-3 vertex with two odd neighbors, so one suffices.
pub struct TriangleTails;

impl<E: Embedding> ReductionRule<E> for TriangleTails {
    fn tag(&self) -> ConfigTag {
        ConfigTag::E2
    }

    fn name(&self) -> &'static str {
        "triangle-tails"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_triangle_33(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::E2 { u, v, w, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "triangle-tails", got: cfg.tag() });
        };
        if emb.graph().degree(u) % 2 == 0 {
            removal_step(emb, cfg, k, vec![v, w])
        } else {
            removal_step(emb, cfg, k, vec![v])
        }
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_triangle_33(g, step, tau_h)
    }
}

/// Two triangles glued along an edge whose ends have degree 4 (tag G2).
pub struct AdjacentTriangles;

impl<E: Embedding> ReductionRule<E> for AdjacentTriangles {
    fn tag(&self) -> ConfigTag {
        ConfigTag::G2
    }

    fn name(&self) -> &'static str {
        "adjacent-triangles"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_adjacent_triangles(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::G2 { x, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "adjacent-triangles", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![x])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_adjacent_triangles(g, step, tau_h)
    }
}

/// Three triangles in a row sharing a degree-4 spine (tag H2).
pub struct TripleTriangle;

impl<E: Embedding> ReductionRule<E> for TripleTriangle {
    fn tag(&self) -> ConfigTag {
        ConfigTag::H2
    }

    fn name(&self) -> &'static str {
        "triple-triangle"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_triple_triangle(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::H2 { u, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "triple-triangle", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![u])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_triple_triangle(g, step, tau_h)
    }
}

/// Five-spoke fan with a degree-3 middle rim vertex (tag I2).
pub struct Fan;

impl<E: Embedding> ReductionRule<E> for Fan {
    fn tag(&self) -> ConfigTag {
        ConfigTag::I2
    }

    fn name(&self) -> &'static str {
        "fan"
    }

    fn find(&self, emb: &E) -> Option<Configuration> {
        detect::find_fan(emb.graph())
    }

    fn reduce(
        &self,
        emb: &E,
        cfg: &Configuration,
        k: u32,
    ) -> Result<(ReductionStep, E), RuleError> {
        certify(self, emb, cfg)?;
        let Configuration::I2 { y, .. } = *cfg else {
            return Err(RuleError::WrongShape { expected: "fan", got: cfg.tag() });
        };
        removal_step(emb, cfg, k, vec![y])
    }

    fn extend(
        &self,
        g: &Graph,
        step: &ReductionStep,
        tau_h: &Coloring,
    ) -> Result<Coloring, RuleError> {
        extend::extend_fan(g, step, tau_h)
    }
}

/// Outer-1-planar catalog in its fixed search order.
pub static RULES_O1P: &[&dyn ReductionRule<OuterOnePlanarEmbedding>] = &[
    &DegreeOne { tag: ConfigTag::A1 },
    &TriangleDegTwo { tag: ConfigTag::B1 },
    &PathDegTwo { tag: ConfigTag::C1 },
    &ChordedSquare,
];

/// 2-boundary catalog in its fixed search order.
pub static RULES_2BP: &[&dyn ReductionRule<TwoBoundaryEmbedding>] = &[
    &DegreeOne { tag: ConfigTag::A2 },
    &TriangleDegTwo { tag: ConfigTag::B2 },
    &PathDegTwo { tag: ConfigTag::C2 },
    &TwoOddNeighbors,
    &TriangleTails,
    &AdjacentTriangles,
    &TripleTriangle,
    &Fan,
];

pub fn rule_for_tag_o1p(
    tag: ConfigTag,
) -> Option<&'static dyn ReductionRule<OuterOnePlanarEmbedding>> {
    RULES_O1P.iter().copied().find(|r| r.tag() == tag)
}

pub fn rule_for_tag_2bp(
    tag: ConfigTag,
) -> Option<&'static dyn ReductionRule<TwoBoundaryEmbedding>> {
    RULES_2BP.iter().copied().find(|r| r.tag() == tag)
}

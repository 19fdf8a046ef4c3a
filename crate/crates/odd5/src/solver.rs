//! The recursive odd-5-coloring algorithm: strip isolated vertices, detect a
//! configuration, reduce, recurse, extend. Prisms and antiprisms short-circuit
//! to their closed-form colorings, and anything with at most six live
//! vertices goes straight to the exact oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{verify_odd, Coloring};
use crate::config::ConfigTag;
use crate::embed::o1p::OuterOnePlanarEmbedding;
use crate::embed::twobp::TwoBoundaryEmbedding;
use crate::embed::Embedding;
use crate::graph::{Graph, Vertex};
use crate::oracle::{is_odd_k_colorable, DEFAULT_MAX_ORACLE_N};
use crate::rules::{
    extend_step, find_config_2bp, find_config_o1p, reduced_graph, rule_for_tag_2bp,
    rule_for_tag_o1p, Detection, DetectorExhausted, ReductionStep, RuleError,
};
use crate::special::{recognize_special, SpecialKind};

/// Palette size the main algorithm is proved for.
pub const SOLVER_K: u32 = 5;

/// Instances at or below this many live vertices skip detection entirely.
const SMALL_GUARD: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseCase {
    Empty,
    Oracle,
    Prism,
    Antiprism,
}

/// Audit trail of one solve: the reduction steps in the order they were
/// applied, the base case that ended the descent, and every vertex that was
/// stripped as isolated along the way (all colored 1).
///
/// Replaying the steps backwards from the base case reconstructs the input
/// graph, and replaying the extensions forward over the base coloring
/// reproduces the returned coloring exactly; see [`replay_trace`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub steps: Vec<ReductionStep>,
    pub base: BaseCase,
    pub isolated: Vec<Vertex>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Exhausted(#[from] DetectorExhausted),
    #[error("extension of {tag} on a subgraph with {live} live vertices failed: {source}")]
    Extension {
        tag: ConfigTag,
        live: usize,
        source: RuleError,
    },
    #[error("solver invariant broken: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Largest live-vertex count the oracle may be asked to rescue when
    /// detection or extension fails mid-solve.
    pub oracle_guard: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { oracle_guard: DEFAULT_MAX_ORACLE_N }
    }
}

/// One recursion level: the graph detection saw (isolated vertices already
/// stripped), the vertices stripped on the way in, and the step applied to
/// it (`None` on the base level).
struct Frame {
    graph: Graph,
    isolated: Vec<Vertex>,
    step: Option<ReductionStep>,
}

enum Advance<E> {
    Reduced(ReductionStep, E),
    Base(BaseCase, Coloring),
    Exhausted(DetectorExhausted),
}

fn internal<D: std::fmt::Display>(what: &str) -> impl Fn(D) -> SolveError + '_ {
    move |e| SolveError::Internal(format!("{what}: {e}"))
}

fn oracle_base(g: &Graph) -> Result<Coloring, SolveError> {
    is_odd_k_colorable(g, SOLVER_K).ok_or_else(|| {
        SolveError::Internal(format!(
            "oracle found no odd 5-coloring of a {}-vertex subgraph",
            g.live_count()
        ))
    })
}

fn solve_engine<E, F>(emb: &E, opts: &SolveOptions, advance: F) -> Result<(Coloring, SolveTrace), SolveError>
where
    E: Embedding,
    F: Fn(&E) -> Result<Advance<E>, SolveError>,
{
    let original = emb.graph().clone();
    let mut frames: Vec<Frame> = Vec::new();
    let mut current = emb.clone();

    let (mut base, mut tau) = loop {
        let isolated = current.graph().isolated_vertices();
        if !isolated.is_empty() {
            current = current
                .delete_vertices(&isolated)
                .map_err(internal("stripping isolated vertices"))?;
        }
        let graph = current.graph().clone();
        let live = graph.live_count();

        if live == 0 {
            let tau = Coloring::new(SOLVER_K, graph.n_slots());
            frames.push(Frame { graph, isolated, step: None });
            break (BaseCase::Empty, tau);
        }
        if live <= SMALL_GUARD {
            let tau = oracle_base(&graph)?;
            frames.push(Frame { graph, isolated, step: None });
            break (BaseCase::Oracle, tau);
        }

        match advance(&current)? {
            Advance::Reduced(step, next) => {
                if step.decrement() != step.expected_decrement() || step.decrement() == 0 {
                    return Err(SolveError::Internal(format!(
                        "step {} shrank |V|+|E| by {} instead of {}",
                        step.config.tag(),
                        step.decrement(),
                        step.expected_decrement()
                    )));
                }
                frames.push(Frame { graph, isolated, step: Some(step) });
                current = next;
            }
            Advance::Base(case, tau) => {
                frames.push(Frame { graph, isolated, step: None });
                break (case, tau);
            }
            Advance::Exhausted(ex) => {
                if live <= opts.oracle_guard {
                    let tau = oracle_base(&graph)?;
                    frames.push(Frame { graph, isolated, step: None });
                    break (BaseCase::Oracle, tau);
                }
                return Err(SolveError::Exhausted(ex));
            }
        }
    };

    // Extend back up. A failed extension over a small enough subgraph is
    // rescued by recoloring that whole subgraph with the oracle; the levels
    // below it become irrelevant and are dropped from the trace.
    let mut lowest = frames.len() - 1;
    for j in (0..frames.len()).rev() {
        let frame = &frames[j];
        if let Some(step) = &frame.step {
            match extend_step(&frame.graph, step, &tau) {
                Ok(next) => tau = next,
                Err(source) => {
                    let live = frame.graph.live_count();
                    if live <= opts.oracle_guard {
                        tau = oracle_base(&frame.graph)?;
                        base = BaseCase::Oracle;
                        lowest = j;
                    } else {
                        return Err(SolveError::Extension { tag: step.config.tag(), live, source });
                    }
                }
            }
        }
        for &v in &frame.isolated {
            tau.set(v, 1);
        }
    }

    let verdict = verify_odd(&original, &tau);
    if !verdict.is_valid() {
        return Err(SolveError::Internal(format!(
            "final coloring failed verification: {verdict:?}"
        )));
    }

    let steps = frames[..lowest]
        .iter()
        .filter_map(|f| f.step.clone())
        .collect();
    let isolated = frames[..=lowest]
        .iter()
        .flat_map(|f| f.isolated.iter().copied())
        .collect();
    Ok((tau, SolveTrace { steps, base, isolated }))
}

fn advance_o1p(emb: &OuterOnePlanarEmbedding) -> Result<Advance<OuterOnePlanarEmbedding>, SolveError> {
    match find_config_o1p(emb) {
        Ok(cfg) => {
            let rule = rule_for_tag_o1p(cfg.tag())
                .ok_or_else(|| SolveError::Internal(format!("no rule registered for {}", cfg.tag())))?;
            let (step, next) = rule
                .reduce(emb, &cfg, SOLVER_K)
                .map_err(internal("reducing a certified configuration"))?;
            Ok(Advance::Reduced(step, next))
        }
        Err(ex) => Ok(Advance::Exhausted(ex)),
    }
}

fn advance_2bp(emb: &TwoBoundaryEmbedding) -> Result<Advance<TwoBoundaryEmbedding>, SolveError> {
    match find_config_2bp(emb) {
        Ok(Detection::Special(s)) => {
            let case = match s.kind {
                SpecialKind::Prism(_) => BaseCase::Prism,
                SpecialKind::Antiprism(_) => BaseCase::Antiprism,
            };
            let tau = s.color(emb.graph().n_slots());
            Ok(Advance::Base(case, tau))
        }
        Ok(Detection::Config(cfg)) => {
            let rule = rule_for_tag_2bp(cfg.tag())
                .ok_or_else(|| SolveError::Internal(format!("no rule registered for {}", cfg.tag())))?;
            let (step, next) = rule
                .reduce(emb, &cfg, SOLVER_K)
                .map_err(internal("reducing a certified configuration"))?;
            Ok(Advance::Reduced(step, next))
        }
        Err(ex) => Ok(Advance::Exhausted(ex)),
    }
}

pub fn odd_five_color_o1p_with(
    emb: &OuterOnePlanarEmbedding,
    opts: &SolveOptions,
) -> Result<(Coloring, SolveTrace), SolveError> {
    solve_engine(emb, opts, advance_o1p)
}

pub fn odd_five_color_o1p(
    emb: &OuterOnePlanarEmbedding,
) -> Result<(Coloring, SolveTrace), SolveError> {
    odd_five_color_o1p_with(emb, &SolveOptions::default())
}

pub fn odd_five_color_2bp_with(
    emb: &TwoBoundaryEmbedding,
    opts: &SolveOptions,
) -> Result<(Coloring, SolveTrace), SolveError> {
    solve_engine(emb, opts, advance_2bp)
}

pub fn odd_five_color_2bp(
    emb: &TwoBoundaryEmbedding,
) -> Result<(Coloring, SolveTrace), SolveError> {
    odd_five_color_2bp_with(emb, &SolveOptions::default())
}

/// Re-derives the solve's coloring from its trace, checking every claim the
/// trace makes on the way down: each recorded step must still match its
/// configuration on the graph it was found in, shrink |V|+|E| by exactly the
/// documented amount, and the base case must reproduce. The result is
/// identical to the solver's output on the same input.
pub fn replay_trace(g: &Graph, trace: &SolveTrace) -> Result<Coloring, SolveError> {
    let mut graphs: Vec<(Graph, Vec<Vertex>)> = Vec::new();
    let mut current = g.clone();
    let mut seen_isolated = Vec::new();

    for step in &trace.steps {
        let isolated = current.isolated_vertices();
        seen_isolated.extend(isolated.iter().copied());
        current = current
            .delete_vertices(&isolated)
            .map_err(internal("stripping isolated vertices"))?;
        if !step.config.check(&current) {
            return Err(SolveError::Internal(format!(
                "recorded {} does not match the graph at its level",
                step.config.tag()
            )));
        }
        if step.decrement() != step.expected_decrement() {
            return Err(SolveError::Internal(format!(
                "recorded {} shrinks |V|+|E| by {} instead of {}",
                step.config.tag(),
                step.decrement(),
                step.expected_decrement()
            )));
        }
        let next = reduced_graph(&current, step).map_err(internal("replaying a step"))?;
        graphs.push((current, isolated));
        current = next;
    }

    let isolated = current.isolated_vertices();
    seen_isolated.extend(isolated.iter().copied());
    current = current
        .delete_vertices(&isolated)
        .map_err(internal("stripping isolated vertices"))?;
    if seen_isolated != trace.isolated {
        return Err(SolveError::Internal(
            "trace's isolated-vertex record does not match the replay".into(),
        ));
    }

    let mut tau = match trace.base {
        BaseCase::Empty => {
            if current.live_count() != 0 {
                return Err(SolveError::Internal("empty base over a non-empty graph".into()));
            }
            Coloring::new(SOLVER_K, current.n_slots())
        }
        BaseCase::Oracle => oracle_base(&current)?,
        BaseCase::Prism | BaseCase::Antiprism => {
            let s = recognize_special(&current).ok_or_else(|| {
                SolveError::Internal("special base over an unrecognized graph".into())
            })?;
            let matches = matches!(
                (trace.base, s.kind),
                (BaseCase::Prism, SpecialKind::Prism(_))
                    | (BaseCase::Antiprism, SpecialKind::Antiprism(_))
            );
            if !matches {
                return Err(SolveError::Internal("special base names the wrong family".into()));
            }
            s.color(current.n_slots())
        }
    };
    for &v in &isolated {
        tau.set(v, 1);
    }

    for ((graph, stripped), step) in graphs.iter().rev().zip(trace.steps.iter().rev()) {
        tau = extend_step(graph, step, &tau).map_err(|source| SolveError::Extension {
            tag: step.config.tag(),
            live: graph.live_count(),
            source,
        })?;
        for &v in stripped {
            tau.set(v, 1);
        }
    }

    let verdict = verify_odd(g, &tau);
    if !verdict.is_valid() {
        return Err(SolveError::Internal(format!(
            "replayed coloring failed verification: {verdict:?}"
        )));
    }
    Ok(tau)
}

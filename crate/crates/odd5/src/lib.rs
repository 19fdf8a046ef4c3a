//! Odd 5-coloring of outer-1-planar and 2-boundary planar graphs.
//!
//! An odd coloring is a proper vertex coloring where every non-isolated
//! vertex sees at least one color an odd number of times in its
//! neighborhood. This crate recognizes the two supported embedding classes,
//! finds reducible configurations, and assembles colorings bottom-up with a
//! verifiable trace. A brute-force oracle backs everything on small inputs.

pub mod coloring;
pub mod config;
pub mod embed;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rules;
pub mod solver;
pub mod special;

pub use coloring::{Color, Coloring, OddVerdict};
pub use generators::{
    enumerate_small, gen_2bp, gen_o1p, GenError, GenParams, GraphClass, Instance,
    ENUMERATION_CAP,
};
pub use config::{ConfigTag, Configuration};
pub use rules::{
    find_config_2bp, find_config_o1p, Detection, DetectorExhausted, ReductionRule,
    ReductionStep, RuleError, RULES_2BP, RULES_O1P,
};
pub use solver::{
    odd_five_color_2bp, odd_five_color_2bp_with, odd_five_color_o1p, odd_five_color_o1p_with,
    replay_trace, BaseCase, SolveError, SolveOptions, SolveTrace, SOLVER_K,
};
pub use io::{
    coloring_from_json, coloring_to_json, graph_from_json, graph_to_json, read_coloring,
    read_graph, write_coloring, write_graph, IoError,
};
pub use special::{SpecialGraph, SpecialKind};
pub use embed::o1p::OuterOnePlanarEmbedding;
pub use embed::twobp::{EdgeClass, FaceWalk, TwoBoundaryEmbedding};
pub use embed::{EmbedError, Embedding, Suppression};
pub use graph::{Graph, GraphError, Vertex};

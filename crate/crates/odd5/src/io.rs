//! JSON files for embedded graphs and colorings.
//!
//! A graph file carries the abstract edges together with the data that pins
//! the embedding: the circle order for outer-1-planar graphs, the rotation
//! system plus the two designated face walks for 2-boundary graphs. Vertex
//! ids are 0-based throughout and unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::embed::o1p::OuterOnePlanarEmbedding;
use crate::embed::twobp::TwoBoundaryEmbedding;
use crate::embed::{EmbedError, Embedding};
use crate::generators::{GraphClass, Instance};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    File(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("a {kind} graph requires the \"{field}\" field")]
    MissingField { kind: GraphClass, field: &'static str },
    #[error("a {kind} graph does not take the \"{field}\" field")]
    UnexpectedField { kind: GraphClass, field: &'static str },
    #[error("rotation lists no neighbors for vertex {0}")]
    RotationGap(Vertex),
    #[error("color {c} outside the palette 1..={k}")]
    ColorOutOfRange { c: Color, k: Color },
    #[error("a 2-boundary region must be a single face walk to serialize")]
    RegionNotSingleWalk,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    kind: GraphClass,
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<Vertex, Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_face: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner_face: Option<Option<Vec<Vertex>>>,
}

/// Renders an instance as a graph JSON document.
///
/// A 2-boundary instance serializes only when each designated region is a
/// single face walk; multi-orbit regions have no place in the format.
pub fn graph_to_json(inst: &Instance) -> Result<String, IoError> {
    let file = match inst {
        Instance::OuterOnePlanar(emb) => GraphFile {
            kind: GraphClass::OuterOnePlanar,
            n: emb.graph().n_slots(),
            edges: emb.graph().edges().collect(),
            order: Some(emb.order().to_vec()),
            rotation: None,
            outer_face: None,
            inner_face: None,
        },
        Instance::TwoBoundaryPlanar(emb) => {
            if emb.outer_walks().len() != 1 || emb.inner_walks().len() > 1 {
                return Err(IoError::RegionNotSingleWalk);
            }
            let rotation = emb
                .rotation()
                .iter()
                .enumerate()
                .map(|(v, nbrs)| (v, nbrs.clone()))
                .collect();
            GraphFile {
                kind: GraphClass::TwoBoundaryPlanar,
                n: emb.graph().n_slots(),
                edges: emb.graph().edges().collect(),
                order: None,
                rotation: Some(rotation),
                outer_face: Some(emb.outer_walks()[0].walk().to_vec()),
                inner_face: Some(emb.inner_walks().first().map(|w| w.walk().to_vec())),
            }
        }
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Parses a graph JSON document and rebuilds the validated embedding.
pub fn graph_from_json(text: &str) -> Result<Instance, IoError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let n = file.n;
    for &(u, v) in &file.edges {
        for w in [u, v] {
            if w >= n {
                return Err(IoError::VertexOutOfRange { v: w, n });
            }
        }
    }
    let graph = Graph::from_edges(n, &file.edges)?;
    let kind = file.kind;
    let missing = |field| IoError::MissingField { kind, field };
    let unexpected = |field| IoError::UnexpectedField { kind, field };
    match kind {
        GraphClass::OuterOnePlanar => {
            if file.rotation.is_some() {
                return Err(unexpected("rotation"));
            }
            if file.outer_face.is_some() {
                return Err(unexpected("outer_face"));
            }
            if file.inner_face.is_some() {
                return Err(unexpected("inner_face"));
            }
            let order = file.order.ok_or_else(|| missing("order"))?;
            let emb = OuterOnePlanarEmbedding::new(graph, order)?;
            Ok(Instance::OuterOnePlanar(emb))
        }
        GraphClass::TwoBoundaryPlanar => {
            if file.order.is_some() {
                return Err(unexpected("order"));
            }
            let map = file.rotation.ok_or_else(|| missing("rotation"))?;
            let outer = file.outer_face.ok_or_else(|| missing("outer_face"))?;
            let inner = file.inner_face.unwrap_or(None);
            for (&v, nbrs) in &map {
                if v >= n {
                    return Err(IoError::VertexOutOfRange { v, n });
                }
                for &w in nbrs {
                    if w >= n {
                        return Err(IoError::VertexOutOfRange { v: w, n });
                    }
                }
            }
            let mut rotation = vec![Vec::new(); n];
            for (v, nbrs) in map {
                rotation[v] = nbrs;
            }
            for v in 0..n {
                if graph.degree(v) > 0 && rotation[v].is_empty() {
                    return Err(IoError::RotationGap(v));
                }
            }
            let emb =
                TwoBoundaryEmbedding::new(graph, rotation, &outer, inner.as_deref())?;
            Ok(Instance::TwoBoundaryPlanar(emb))
        }
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Instance, IoError> {
    graph_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, inst: &Instance) -> Result<(), IoError> {
    Ok(std::fs::write(path, graph_to_json(inst)?)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringFile {
    k: Color,
    colors: BTreeMap<Vertex, Color>,
}

pub fn coloring_to_json(tau: &Coloring) -> String {
    let colors = (0..tau.n_slots())
        .filter_map(|v| tau.get(v).map(|c| (v, c)))
        .collect();
    let file = ColoringFile { k: tau.k(), colors };
    serde_json::to_string_pretty(&file).expect("coloring serialization cannot fail")
}

/// Parses a coloring JSON document against a graph with `n_slots` vertices.
pub fn coloring_from_json(text: &str, n_slots: usize) -> Result<Coloring, IoError> {
    let file: ColoringFile = serde_json::from_str(text)?;
    let mut tau = Coloring::new(file.k, n_slots);
    for (v, c) in file.colors {
        if v >= n_slots {
            return Err(IoError::VertexOutOfRange { v, n: n_slots });
        }
        if c == 0 || c > file.k {
            return Err(IoError::ColorOutOfRange { c, k: file.k });
        }
        tau.set(v, c);
    }
    Ok(tau)
}

pub fn read_coloring(path: impl AsRef<Path>, n_slots: usize) -> Result<Coloring, IoError> {
    coloring_from_json(&std::fs::read_to_string(path)?, n_slots)
}

pub fn write_coloring(path: impl AsRef<Path>, tau: &Coloring) -> Result<(), IoError> {
    Ok(std::fs::write(path, coloring_to_json(tau))?)
}

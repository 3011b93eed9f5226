//! Geometric intersection models, clique trees and seeded random generators.

mod arc;
mod clique_tree;
mod generate;
mod interval;
mod trapezoid;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arc::{Arc, ArcModel};
pub use clique_tree::{CliqueTree, Leaders};
pub use generate::{random_model, MAX_RESAMPLES};
pub use interval::IntervalModel;
pub use trapezoid::{
    q_permutation_model, trapezoids_intersect, PermutationModel, Trapezoid, TrapezoidKind, TrapezoidModel,
};

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("model does not represent the given graph: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no connected sample after {0} attempts")]
    SeedExhausted(usize),
    #[error("bag {0} has an empty trim set")]
    EmptyBagSet(usize),
    #[error("no valid leader choice: {0}")]
    LeaderChoiceFailed(String),
    #[error("clique tree is not a path")]
    NotAPath,
    #[error("no random generator for `{0}`")]
    Unsupported(String),
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError::Invalid(msg.into()))
}

/// A vertex ordering, e.g. a proper interval ordering or a circular-arc ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ordering {
    /// `order[i]` is the node at position `i`.
    pub order: Vec<usize>,
}

impl Ordering {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn is_permutation_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.order.len() == n && self.order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }
}

/// Any witness a prover can start from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeometricModel {
    Interval(IntervalModel),
    Arc(ArcModel),
    CliqueTree(CliqueTree),
    Trapezoid(TrapezoidModel),
    Permutation(PermutationModel),
    Ordering(Ordering),
}

impl GeometricModel {
    /// Intersection graph of the model, when the model determines one.
    pub fn to_graph(&self) -> Option<Result<crate::Graph, GraphError>> {
        match self {
            GeometricModel::Interval(m) => Some(m.to_graph()),
            GeometricModel::Arc(m) => Some(m.to_graph()),
            GeometricModel::Trapezoid(m) => Some(m.to_graph()),
            GeometricModel::Permutation(m) => Some(m.to_graph()),
            GeometricModel::CliqueTree(_) | GeometricModel::Ordering(_) => None,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            GeometricModel::Interval(m) => m.intervals.len(),
            GeometricModel::Arc(m) => m.arcs.len(),
            GeometricModel::CliqueTree(t) => t.node_count(),
            GeometricModel::Trapezoid(m) => m.traps.len(),
            GeometricModel::Permutation(m) => m.l1.len(),
            GeometricModel::Ordering(o) => o.order.len(),
        }
    }
}

/// Graph on `0..n` from a symmetric predicate, with default identifiers.
pub(crate) fn graph_from_predicate(
    n: usize,
    adjacent: impl Fn(usize, usize) -> bool,
) -> Result<crate::Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adjacent(u, v) {
                edges.push((u, v));
            }
        }
    }
    crate::Graph::new(n, &edges)
}

/// Checks that `g` has exactly the edges `adjacent` predicts.
pub(crate) fn check_represents(
    g: &crate::Graph,
    n: usize,
    adjacent: impl Fn(usize, usize) -> bool,
) -> Result<(), ModelError> {
    if g.n() != n {
        return Err(ModelError::Mismatch(format!("model has {n} nodes, graph has {}", g.n())));
    }
    for u in 0..n {
        for v in u + 1..n {
            if adjacent(u, v) != g.has_edge(u, v) {
                return Err(ModelError::Mismatch(format!("pair ({u}, {v})")));
            }
        }
    }
    Ok(())
}

//! Provers and verifiers for the seven graph classes, plus dispatch by [`Scheme`].

pub mod chordal;
pub mod circular;
pub mod proper_interval;
pub mod trapezoid;

use thiserror::Error;

use crate::models::{Arc, ArcModel, CliqueTree, GeometricModel, IntervalModel, ModelError, Ordering, PermutationModel};
use crate::oracles::{self, FixtureVerdict, OracleError, OrderingProperty};
use crate::runtime::toolbox::{self, encode_all};
use crate::runtime::{CertCodec, Certificate, Dims, NodeView, Scheme, Verdict};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    /// The witness does not support certificates: wrong kind, does not represent the
    /// graph, or fails the property the prover relies on.
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("graph is not in class `{0}`")]
    NotInClass(Scheme),
    #[error("membership in `{0}` is undecided for this graph")]
    Undecided(Scheme),
    #[error("scheme `{0}` has no prover here")]
    Unsupported(Scheme),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl SchemeError {
    pub fn witness(msg: impl Into<String>) -> Self {
        SchemeError::InvalidWitness(msg.into())
    }

    pub fn from_model(e: ModelError) -> Self {
        SchemeError::InvalidWitness(e.to_string())
    }
}

pub type Verifier = fn(&NodeView) -> Verdict;

/// The verifier of `scheme`. The s-t path protocol needs its endpoints and is only
/// available through [`toolbox::path_verify`].
pub fn verifier(scheme: Scheme) -> Option<Verifier> {
    Some(match scheme {
        Scheme::ProperInterval => proper_interval::verify,
        Scheme::Interval => chordal::interval_verify,
        Scheme::Chordal => chordal::chordal_verify,
        Scheme::ProperCircularArc => circular::proper_circ_verify,
        Scheme::CircularArc => circular::circ_verify,
        Scheme::Trapezoid => trapezoid::trapezoid_verify,
        Scheme::Permutation => trapezoid::permutation_verify,
        Scheme::SpanningTree => toolbox::spanning_tree_verify,
        Scheme::Size => toolbox::size_verify,
        Scheme::StPath => return None,
    })
}

/// Field layout of `scheme`'s certificates at the given dimensions, all values zero.
pub fn template(scheme: Scheme, dims: &Dims) -> Certificate {
    match scheme {
        Scheme::ProperInterval => proper_interval::ProperIntervalCert::template(scheme, dims),
        Scheme::Interval => chordal::IntervalCert::template(scheme, dims),
        Scheme::Chordal => chordal::ChordalCert::template(scheme, dims),
        Scheme::ProperCircularArc => circular::ProperCircCert::template(scheme, dims),
        Scheme::CircularArc => circular::CircCert::template(scheme, dims),
        Scheme::Trapezoid | Scheme::Permutation => trapezoid::TrapezoidCert::template(scheme, dims),
        Scheme::SpanningTree => toolbox::SpanningTreeCert::template(scheme, dims),
        Scheme::Size => toolbox::SizeCert::template(scheme, dims),
        Scheme::StPath => toolbox::PathCert::template(scheme, dims),
    }
}

fn interval_as_arcs(m: &IntervalModel) -> ArcModel {
    ArcModel {
        circumference: 2 * m.intervals.len() as u64,
        arcs: m.intervals.iter().map(|&(left, right)| Arc { left, right }).collect(),
    }
}

fn interval_clique_path(g: &Graph, m: &IntervalModel) -> Result<CliqueTree, SchemeError> {
    m.check_represents(g).map_err(SchemeError::from_model)?;
    Ok(CliqueTree::path(m.clique_path()))
}

fn wrong_kind(scheme: Scheme, model: &GeometricModel) -> SchemeError {
    let kind = match model {
        GeometricModel::Interval(_) => "interval",
        GeometricModel::Arc(_) => "arc",
        GeometricModel::CliqueTree(_) => "clique-tree",
        GeometricModel::Trapezoid(_) => "trapezoid",
        GeometricModel::Permutation(_) => "permutation",
        GeometricModel::Ordering(_) => "ordering",
    };
    SchemeError::witness(format!("a {kind} witness cannot certify `{scheme}`"))
}

/// Honest certificates for `g` from a witness. Accepted witness kinds per scheme:
/// proper-interval takes an umbrella ordering or a proper interval model; interval and
/// chordal take a clique tree or an interval model; the arc schemes take an arc model
/// (circular-arc also an ordering or an interval model); trapezoid takes a trapezoid or
/// permutation model, permutation a permutation or consecutive trapezoid model. The
/// auxiliary spanning tree and size schemes root at node 0 for any witness.
pub fn prove(scheme: Scheme, g: &Graph, model: &GeometricModel) -> Result<Vec<Certificate>, SchemeError> {
    use GeometricModel as M;
    let certs = match (scheme, model) {
        (Scheme::ProperInterval, M::Ordering(o)) => encode_all(scheme, g, &proper_interval::prove(g, o)?),
        (Scheme::ProperInterval, M::Interval(m)) => {
            m.check_represents(g).map_err(SchemeError::from_model)?;
            if !m.is_proper() {
                return Err(SchemeError::witness("interval model is not proper"));
            }
            encode_all(scheme, g, &proper_interval::prove(g, &Ordering { order: m.left_order() })?)
        }
        (Scheme::Interval, M::CliqueTree(t)) => encode_all(scheme, g, &chordal::interval_prove(g, t)?),
        (Scheme::Interval, M::Interval(m)) => {
            encode_all(scheme, g, &chordal::interval_prove(g, &interval_clique_path(g, m)?)?)
        }
        (Scheme::Chordal, M::CliqueTree(t)) => encode_all(scheme, g, &chordal::chordal_prove(g, t)?),
        (Scheme::Chordal, M::Interval(m)) => {
            encode_all(scheme, g, &chordal::chordal_prove(g, &interval_clique_path(g, m)?)?)
        }
        (Scheme::ProperCircularArc, M::Arc(a)) => encode_all(scheme, g, &circular::proper_circ_prove_from_arcs(g, a)?),
        (Scheme::CircularArc, M::Arc(a)) => encode_all(scheme, g, &circular::circ_prove_from_arcs(g, a)?),
        (Scheme::CircularArc, M::Ordering(o)) => encode_all(scheme, g, &circular::circ_prove(g, o)?),
        (Scheme::CircularArc, M::Interval(m)) => {
            m.check_represents(g).map_err(SchemeError::from_model)?;
            encode_all(scheme, g, &circular::circ_prove_from_arcs(g, &interval_as_arcs(m))?)
        }
        (Scheme::Trapezoid, M::Trapezoid(m)) => encode_all(scheme, g, &trapezoid::trapezoid_prove(g, m)?),
        (Scheme::Trapezoid, M::Permutation(m)) => encode_all(scheme, g, &trapezoid::permutation_prove(g, m)?),
        (Scheme::Permutation, M::Permutation(m)) => encode_all(scheme, g, &trapezoid::permutation_prove(g, m)?),
        (Scheme::Permutation, M::Trapezoid(m)) => {
            let p = PermutationModel::from_consecutive_trapezoids(m).map_err(SchemeError::from_model)?;
            encode_all(scheme, g, &trapezoid::permutation_prove(g, &p)?)
        }
        (Scheme::SpanningTree, _) => encode_all(scheme, g, &toolbox::spanning_tree_prove(g, 0)),
        (Scheme::Size, _) => encode_all(scheme, g, &toolbox::size_prove(g, 0)),
        (Scheme::StPath, _) => return Err(SchemeError::Unsupported(scheme)),
        _ => return Err(wrong_kind(scheme, model)),
    };
    Ok(certs)
}

/// A witness for `g` in `class`, found by the oracles. Fails with `NotInClass` when the
/// oracle rules `g` out and `Undecided` when no oracle settles it (trapezoid graphs that
/// are not permutation graphs and match no registered no-instance).
pub fn find_witness(class: Scheme, g: &Graph) -> Result<GeometricModel, SchemeError> {
    let found = match class {
        Scheme::ProperInterval => oracles::proper_interval_ordering(g)?.map(GeometricModel::Ordering),
        Scheme::Interval => oracles::interval_clique_path(g)?.map(GeometricModel::CliqueTree),
        Scheme::Chordal => oracles::clique_tree(g).map(GeometricModel::CliqueTree),
        Scheme::ProperCircularArc => oracles::proper_arc_model(g)?.map(GeometricModel::Arc),
        Scheme::CircularArc => {
            oracles::search_ordering(g, OrderingProperty::QuasiCircular, true)?.map(GeometricModel::Ordering)
        }
        Scheme::Permutation => oracles::permutation_model_search(g)?.map(GeometricModel::Permutation),
        Scheme::Trapezoid => match oracles::permutation_model_search(g) {
            Ok(Some(p)) => Some(GeometricModel::Permutation(p)),
            _ => match oracles::trapezoid_membership_fixture(g, None) {
                FixtureVerdict::No => None,
                _ => return Err(SchemeError::Undecided(class)),
            },
        },
        Scheme::SpanningTree | Scheme::Size => Some(GeometricModel::Ordering(Ordering { order: (0..g.n()).collect() })),
        Scheme::StPath => return Err(SchemeError::Unsupported(class)),
    };
    found.ok_or(SchemeError::NotInClass(class))
}

/// Certificates for `g` from an oracle-found witness.
pub fn certify(scheme: Scheme, g: &Graph) -> Result<Vec<Certificate>, SchemeError> {
    prove(scheme, g, &find_witness(scheme, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::random_model;
    use crate::runtime::run_pls;

    #[test]
    fn generated_models_certify_under_every_class() {
        for class in Scheme::CLASSES {
            for seed in 0..10 {
                let (g, m) = random_model(class, 9, seed).unwrap();
                let certs = prove(class, &g, &m).unwrap();
                let r = run_pls(class, &g, &certs, &verifier(class).unwrap());
                assert!(r.accepted(), "{class} seed {seed}: {:?}", r.reasons);
            }
        }
    }

    #[test]
    fn templates_match_honest_layouts() {
        let (g, m) = random_model(Scheme::Trapezoid, 6, 3).unwrap();
        let certs = prove(Scheme::Trapezoid, &g, &m).unwrap();
        let t = template(Scheme::Trapezoid, &Dims::of(&g));
        assert_eq!(t.bits(), certs[0].bits());
        assert_eq!(t.leaves().len(), certs[0].leaves().len());
    }

    #[test]
    fn wrong_witness_kind_is_refused() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let m = GeometricModel::Ordering(Ordering { order: vec![0, 1, 2] });
        assert!(matches!(prove(Scheme::Chordal, &g, &m), Err(SchemeError::InvalidWitness(_))));
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(certify(Scheme::Chordal, &c4), Err(SchemeError::NotInClass(Scheme::Chordal)));
    }
}

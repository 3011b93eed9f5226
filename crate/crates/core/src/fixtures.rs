//! Registered yes/no instances with per-class verdicts and where each verdict comes from.

use serde::Serialize;
use thiserror::Error;

use crate::graph::construct_q;
use crate::models::{q_permutation_model, GeometricModel};
use crate::oracles::{self, crossed_q, FixtureVerdict, OrderingProperty};
use crate::runtime::Scheme;
use crate::Graph;

/// Why a verdict holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "note", rename_all = "lowercase")]
pub enum Provenance {
    /// A structural argument, stated in the note.
    Argument(&'static str),
    /// The named oracle; re-run and compared at registration.
    Oracle(&'static str),
    /// A geometric model of the class, checked against the graph at registration.
    Model,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassVerdict {
    pub class: Scheme,
    pub verdict: FixtureVerdict,
    pub provenance: Vec<Provenance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureEntry {
    pub name: &'static str,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub model: Option<GeometricModel>,
    pub verdicts: Vec<ClassVerdict>,
}

impl FixtureEntry {
    pub fn verdict(&self, class: Scheme) -> FixtureVerdict {
        self.verdicts.iter().find(|v| v.class == class).map_or(FixtureVerdict::Unknown, |v| v.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("fixture `{0}`: verdict for `{1}` has no provenance or is given twice")]
    MissingProvenance(String, Scheme),
    #[error("fixture `{0}`: oracle disagrees with the registered verdict for `{1}`")]
    OracleDisagrees(String, Scheme),
    #[error("fixture `{0}`: model does not witness `{1}`")]
    BadModel(String, Scheme),
    #[error("fixture `{0}` is already registered")]
    Duplicate(String),
    #[error("no fixture named `{0}`")]
    Unknown(String),
    #[error("fixture `{0}` is not a registered no-instance for `{1}`")]
    NotANoInstance(String, Scheme),
}

/// Verdict of the oracle backing `class`, where one exists at this size.
pub fn oracle_verdict(class: Scheme, g: &Graph) -> Option<FixtureVerdict> {
    let yes_no = |b: bool| if b { FixtureVerdict::Yes } else { FixtureVerdict::No };
    match class {
        Scheme::ProperInterval => Some(yes_no(oracles::is_proper_interval(g))),
        Scheme::Interval => Some(yes_no(oracles::is_interval(g))),
        Scheme::Chordal => Some(yes_no(oracles::is_chordal(g).is_some())),
        Scheme::ProperCircularArc => {
            oracles::search_ordering(g, OrderingProperty::CircularlyCompatible, true).ok().map(|o| yes_no(o.is_some()))
        }
        Scheme::CircularArc => {
            oracles::search_ordering(g, OrderingProperty::QuasiCircular, true).ok().map(|o| yes_no(o.is_some()))
        }
        Scheme::Permutation => Some(yes_no(oracles::is_permutation_graph(g))),
        Scheme::Trapezoid => match oracles::trapezoid_membership_fixture(g, None) {
            FixtureVerdict::Unknown if oracles::is_permutation_graph(g) => Some(FixtureVerdict::Yes),
            FixtureVerdict::Unknown => None,
            v => Some(v),
        },
        _ => None,
    }
}

fn model_witnesses(class: Scheme, g: &Graph, model: &GeometricModel) -> bool {
    crate::schemes::prove(class, g, model).is_ok()
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    entries: Vec<FixtureEntry>,
}

impl Registry {
    /// Adds an entry after checking every verdict's provenance.
    pub fn register(&mut self, entry: FixtureEntry) -> Result<(), FixtureError> {
        let name = entry.name.to_string();
        if self.get(entry.name).is_some() {
            return Err(FixtureError::Duplicate(name));
        }
        for v in &entry.verdicts {
            if v.provenance.is_empty() || entry.verdicts.iter().filter(|w| w.class == v.class).count() > 1 {
                return Err(FixtureError::MissingProvenance(name, v.class));
            }
            for p in &v.provenance {
                match *p {
                    Provenance::Argument(note) | Provenance::Oracle(note) if note.trim().is_empty() => {
                        return Err(FixtureError::MissingProvenance(name, v.class));
                    }
                    Provenance::Argument(_) => {}
                    Provenance::Oracle(_) => {
                        if oracle_verdict(v.class, &entry.graph) != Some(v.verdict) {
                            return Err(FixtureError::OracleDisagrees(name, v.class));
                        }
                    }
                    Provenance::Model => {
                        let ok = v.verdict == FixtureVerdict::Yes
                            && entry.model.as_ref().is_some_and(|m| model_witnesses(v.class, &entry.graph, m));
                        if !ok {
                            return Err(FixtureError::BadModel(name, v.class));
                        }
                    }
                }
            }
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn entries(&self) -> &[FixtureEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&FixtureEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The fixture, provided it is a registered no-instance for `class`.
    pub fn no_instance(&self, name: &str, class: Scheme) -> Result<&FixtureEntry, FixtureError> {
        let e = self.get(name).ok_or_else(|| FixtureError::Unknown(name.into()))?;
        if e.verdict(class) != FixtureVerdict::No {
            return Err(FixtureError::NotANoInstance(name.into(), class));
        }
        Ok(e)
    }

    /// Every (fixture, class) pair with a `No` verdict, in registration order.
    pub fn no_pairs(&self) -> Vec<(&FixtureEntry, Scheme)> {
        self.entries
            .iter()
            .flat_map(|e| e.verdicts.iter().filter(|v| v.verdict == FixtureVerdict::No).map(move |v| (e, v.class)))
            .collect()
    }

    /// The built-in fixtures.
    pub fn builtin() -> Registry {
        let mut r = Registry::default();
        for e in builtin_entries() {
            r.register(e).expect("built-in fixture verdicts hold");
        }
        r
    }
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).expect("cycle")
}

pub fn claw() -> Graph {
    Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).expect("claw")
}

/// The claw with every edge subdivided once: centre 0, legs 0-1-2, 0-3-4, 0-5-6.
pub fn subdivided_claw() -> Graph {
    Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).expect("subdivided claw")
}

/// `Q_3` with the middle edges of its first two groups crossed.
pub fn crossed_q3() -> Graph {
    crossed_q(3, 1, 2).expect("crossing of Q_3")
}

fn verdict(class: Scheme, verdict: FixtureVerdict, provenance: &[Provenance]) -> ClassVerdict {
    ClassVerdict { class, verdict, provenance: provenance.to_vec() }
}

fn builtin_entries() -> Vec<FixtureEntry> {
    use FixtureVerdict::{No, Yes};
    use Provenance::{Argument, Model, Oracle};
    use Scheme::*;
    let chordless = "has a chordless cycle of length at least 4";
    let long_cycle = "has an induced cycle of length at least 5";
    vec![
        FixtureEntry {
            name: "c4",
            graph: cycle(4),
            model: None,
            verdicts: vec![
                verdict(Chordal, No, &[Argument(chordless), Oracle("is_chordal")]),
                verdict(Interval, No, &[Argument("interval graphs are chordal"), Oracle("is_interval")]),
                verdict(ProperInterval, No, &[Argument("proper interval graphs are chordal")]),
            ],
        },
        FixtureEntry {
            name: "k13",
            graph: claw(),
            model: None,
            verdicts: vec![
                verdict(ProperInterval, No, &[Oracle("proper_interval_ordering")]),
                verdict(ProperCircularArc, No, &[Oracle("search_ordering circularly-compatible")]),
                verdict(Interval, Yes, &[Oracle("is_interval")]),
            ],
        },
        FixtureEntry {
            name: "c6",
            graph: cycle(6),
            model: None,
            verdicts: vec![
                verdict(Trapezoid, No, &[Argument(long_cycle), Oracle("trapezoid_membership_fixture")]),
                verdict(
                    Permutation,
                    No,
                    &[Argument("permutation graphs are trapezoid graphs"), Oracle("is_permutation_graph")],
                ),
                verdict(CircularArc, Yes, &[Oracle("search_ordering quasi-circular")]),
            ],
        },
        FixtureEntry {
            name: "crossed-q3",
            graph: crossed_q3(),
            model: None,
            verdicts: vec![
                verdict(Trapezoid, No, &[Argument(long_cycle), Oracle("trapezoid_membership_fixture")]),
                verdict(
                    Permutation,
                    No,
                    &[Argument("permutation graphs are trapezoid graphs"), Oracle("is_permutation_graph")],
                ),
            ],
        },
        FixtureEntry {
            name: "subdivided-claw",
            graph: subdivided_claw(),
            model: None,
            verdicts: vec![
                verdict(Interval, No, &[Argument("the three leaves form an asteroidal triple"), Oracle("is_interval")]),
                verdict(Chordal, Yes, &[Oracle("is_chordal")]),
                verdict(CircularArc, No, &[Oracle("search_ordering quasi-circular")]),
            ],
        },
        FixtureEntry {
            name: "q3",
            graph: construct_q(3).expect("Q_3"),
            model: Some(GeometricModel::Permutation(q_permutation_model(3))),
            verdicts: vec![verdict(Permutation, Yes, &[Model]), verdict(Trapezoid, Yes, &[Model])],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_has_the_no_pairs() {
        let r = Registry::builtin();
        let pairs: Vec<(&str, Scheme)> = r.no_pairs().iter().map(|(e, s)| (e.name, *s)).collect();
        for want in [
            ("c4", Scheme::Chordal),
            ("c4", Scheme::Interval),
            ("c4", Scheme::ProperInterval),
            ("k13", Scheme::ProperInterval),
            ("k13", Scheme::ProperCircularArc),
            ("c6", Scheme::Trapezoid),
            ("c6", Scheme::Permutation),
            ("crossed-q3", Scheme::Trapezoid),
            ("crossed-q3", Scheme::Permutation),
            ("subdivided-claw", Scheme::Interval),
            ("subdivided-claw", Scheme::CircularArc),
        ] {
            assert!(pairs.contains(&want), "{want:?}");
        }
    }

    #[test]
    fn registry_refuses_unsupported_verdicts() {
        let mut r = Registry::default();
        let e = |verdicts| FixtureEntry { name: "x", graph: cycle(4), model: None, verdicts };
        let blank = vec![verdict(Scheme::Chordal, FixtureVerdict::No, &[Provenance::Argument(" ")])];
        assert!(matches!(r.register(e(blank)), Err(FixtureError::MissingProvenance(..))));
        let wrong = vec![verdict(Scheme::Chordal, FixtureVerdict::Yes, &[Provenance::Oracle("is_chordal")])];
        assert!(matches!(r.register(e(wrong)), Err(FixtureError::OracleDisagrees(..))));
        let no_model = vec![verdict(Scheme::Chordal, FixtureVerdict::Yes, &[Provenance::Model])];
        assert!(matches!(r.register(e(no_model)), Err(FixtureError::BadModel(..))));
        r.register(e(vec![])).unwrap();
        assert!(matches!(r.register(e(vec![])), Err(FixtureError::Duplicate(_))));
    }

    #[test]
    fn yes_fixture_is_not_a_no_instance() {
        let r = Registry::builtin();
        assert!(matches!(r.no_instance("q3", Scheme::Permutation), Err(FixtureError::NotANoInstance(..))));
        assert!(matches!(r.no_instance("nope", Scheme::Chordal), Err(FixtureError::Unknown(_))));
        assert!(r.no_instance("c6", Scheme::Trapezoid).is_ok());
    }
}

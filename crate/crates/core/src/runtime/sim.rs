use std::borrow::Cow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Certificate, Scheme};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Cow<'static, str>),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn reject(reason: &'static str) -> Verdict {
        Verdict::Reject(Cow::Borrowed(reason))
    }
}

/// Turns a boolean check into an early `Reject` from a verifier.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $reason:expr) => {
        if !$cond {
            return $crate::runtime::Verdict::reject($reason);
        }
    };
}

/// Everything a node sees: its identifier, its own certificate and the identifiers and
/// certificates of its neighbours, in no particular order. The node count is not visible.
pub struct NodeView<'a> {
    pub id: u64,
    pub cert: &'a Certificate,
    pub neighbors: Vec<(u64, &'a Certificate)>,
}

impl NodeView<'_> {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Present neighbours in a seeded random order rather than by index.
    pub shuffle_neighbors: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, shuffle_neighbors: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub scheme: Scheme,
    pub n: usize,
    pub verdict: RunVerdict,
    pub rejecting_ids: Vec<u64>,
    pub max_cert_bits: u32,
    pub seed: u64,
    #[serde(skip)]
    pub reasons: Vec<(u64, String)>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunVerdict {
    Accept,
    Reject,
}

impl RunReport {
    pub fn accepted(&self) -> bool {
        self.verdict == RunVerdict::Accept
    }

    pub const CSV_HEADER: &'static str = "scheme,n,verdict,rejecting_ids,max_cert_bits,seed";

    pub fn csv_row(&self) -> String {
        let ids: Vec<String> = self.rejecting_ids.iter().map(u64::to_string).collect();
        format!(
            "{},{},{},{},{},{}",
            self.scheme,
            self.n,
            if self.accepted() { "accept" } else { "reject" },
            ids.join(";"),
            self.max_cert_bits,
            self.seed
        )
    }
}

/// Runs one verification round with default options.
pub fn run_pls(scheme: Scheme, g: &Graph, certs: &[Certificate], verify: &dyn Fn(&NodeView) -> Verdict) -> RunReport {
    run_pls_with(scheme, g, certs, verify, RunOptions::default())
}

/// Evaluates `verify` at every node. A verifier that panics rejects at that node.
pub fn run_pls_with(
    scheme: Scheme,
    g: &Graph,
    certs: &[Certificate],
    verify: &dyn Fn(&NodeView) -> Verdict,
    opts: RunOptions,
) -> RunReport {
    assert_eq!(certs.len(), g.n(), "one certificate per node");
    #[cfg(not(target_arch = "wasm32"))]
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut reasons = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        order.clear();
        order.extend_from_slice(g.neighbors(v));
        if opts.shuffle_neighbors {
            order.shuffle(&mut rng);
        }
        let view =
            NodeView { id: g.id(v), cert: &certs[v], neighbors: order.iter().map(|&u| (g.id(u), &certs[u])).collect() };
        let verdict =
            catch_unwind(AssertUnwindSafe(|| verify(&view))).unwrap_or_else(|_| Verdict::reject("verifier panicked"));
        if let Verdict::Reject(why) = verdict {
            reasons.push((g.id(v), why.into_owned()));
        }
    }
    reasons.sort();
    let rejecting_ids: Vec<u64> = reasons.iter().map(|r| r.0).collect();
    RunReport {
        scheme,
        n: g.n(),
        verdict: if rejecting_ids.is_empty() { RunVerdict::Accept } else { RunVerdict::Reject },
        rejecting_ids,
        max_cert_bits: certs.iter().map(Certificate::bits).max().unwrap_or(0),
        seed: opts.seed,
        reasons,
        #[cfg(not(target_arch = "wasm32"))]
        wall_time: start.elapsed(),
        #[cfg(target_arch = "wasm32")]
        wall_time: Duration::ZERO,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::{Dims, Domain, Field, IntField, ValueKind};

    fn unit_cert(v: u64) -> Certificate {
        Certificate {
            scheme: Scheme::Size,
            fields: vec![Field::Int(IntField {
                name: "x".into(),
                value: v,
                domain: Domain::new(0, 7),
                kind: ValueKind::Int,
            })],
        }
    }

    #[test]
    fn panicking_verifier_rejects() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let certs: Vec<_> = (0..3).map(unit_cert).collect();
        let r = run_pls(Scheme::Size, &g, &certs, &|view| {
            if view.id == 2 {
                panic!("boom");
            }
            Verdict::Accept
        });
        assert_eq!(r.rejecting_ids, vec![2]);
        assert_eq!(r.max_cert_bits, 3);
        let _ = Dims::new(3, 27);
    }

    #[test]
    fn views_hide_node_count_and_show_neighbors() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let certs: Vec<_> = (0..3).map(unit_cert).collect();
        let r = run_pls(Scheme::Size, &g, &certs, &|view| {
            let mut ids: Vec<u64> = view.neighbors.iter().map(|p| p.0).collect();
            ids.sort();
            let expect: Vec<u64> = match view.id {
                1 => vec![2],
                2 => vec![1, 3],
                _ => vec![2],
            };
            if ids == expect {
                Verdict::Accept
            } else {
                Verdict::reject("wrong view")
            }
        });
        assert!(r.accepted());
    }

    #[test]
    fn report_serializes_without_timing() {
        let g = Graph::new(1, &[]).unwrap();
        let r = run_pls(Scheme::Size, &g, &[unit_cert(0)], &|_| Verdict::Accept);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("wall"));
        assert_eq!(r.csv_row(), "size,1,accept,,3,0");
    }
}

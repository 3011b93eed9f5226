//! Text formats for graphs and models, and the JSON certificate file.
//!
//! Edge list:
//!
//! ```text
//! n m
//! u v        (m lines, u < v, pairs in ascending order)
//! id i x     (optional, either none or one line per node, i ascending)
//! ```
//!
//! Model file: a `class` header line followed by one line per node or bag.
//!
//! ```text
//! class interval            v a b
//! class arc C               v left right
//! class trapezoid proper    v t1 t2 b1 b2      (or semi-proper)
//! class permutation         v l1 l2
//! class ordering            order v0 v1 ...
//! class clique-tree         bag i parent|- v...
//! ```
//!
//! Node and bag lines are numbered `0..` in order. Blank lines and anything after `#`
//! are ignored in both formats.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::DEFAULT_ID_EXPONENT;
use crate::models::{
    Arc, ArcModel, CliqueTree, GeometricModel, IntervalModel, Ordering, PermutationModel, Trapezoid, TrapezoidKind,
    TrapezoidModel,
};
use crate::runtime::{run_pls_with, Certificate, Dims, Field, RunOptions, RunReport, RunVerdict, Scheme};
use crate::schemes;
use crate::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate file: {0}")]
    Json(String),
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax { line, msg: msg.into() })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn num<T: std::str::FromStr>(line: usize, w: &str) -> Result<T, FormatError> {
    w.parse().or_else(|_| syntax(line, format!("expected a number, found `{w}`")))
}

fn nums<T: std::str::FromStr>(line: usize, words: &[&str], count: usize) -> Result<Vec<T>, FormatError> {
    if words.len() != count {
        return syntax(line, format!("expected {count} numbers, found {}", words.len()));
    }
    words.iter().map(|w| num(line, w)).collect()
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    if g.ids().iter().enumerate().any(|(i, &id)| id != i as u64 + 1) {
        for (i, id) in g.ids().iter().enumerate() {
            out.push_str(&format!("id {i} {id}\n"));
        }
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut it = lines(text);
    let (l0, head) = it.next().ok_or_else(|| FormatError::Eof("missing `n m` header".into()))?;
    let hm: Vec<usize> = nums(l0, &head, 2)?;
    let (n, m) = (hm[0], hm[1]);
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (l, words) = it.next().ok_or_else(|| FormatError::Eof(format!("expected {m} edges, found {k}")))?;
        let e: Vec<usize> = nums(l, &words, 2)?;
        let e = (e[0], e[1]);
        if e.0 >= e.1 {
            return syntax(l, "edge must be written as `u v` with u < v");
        }
        if edges.last().is_some_and(|&last| last >= e) {
            return syntax(l, "edges must be in ascending order without repeats");
        }
        edges.push(e);
    }
    let mut ids = Vec::new();
    for (l, words) in it {
        if words[0] != "id" {
            return syntax(l, format!("unexpected `{}` after the edge list", words[0]));
        }
        let x: Vec<u64> = nums(l, &words[1..], 2)?;
        if x[0] != ids.len() as u64 {
            return syntax(l, format!("expected `id {}`", ids.len()));
        }
        ids.push(x[1]);
    }
    if ids.is_empty() {
        ids = (1..=n as u64).collect();
    } else if ids.len() != n {
        return Err(FormatError::Eof(format!("identifier lines cover {} of {n} nodes", ids.len())));
    }
    Ok(Graph::with_ids(n, &edges, ids, DEFAULT_ID_EXPONENT)?)
}

fn class_tag(m: &GeometricModel) -> &'static str {
    match m {
        GeometricModel::Interval(_) => "interval",
        GeometricModel::Arc(_) => "arc",
        GeometricModel::CliqueTree(_) => "clique-tree",
        GeometricModel::Trapezoid(_) => "trapezoid",
        GeometricModel::Permutation(_) => "permutation",
        GeometricModel::Ordering(_) => "ordering",
    }
}

pub fn write_model(m: &GeometricModel) -> String {
    let mut out = format!("class {}", class_tag(m));
    match m {
        GeometricModel::Interval(iv) => {
            out.push('\n');
            for (v, (a, b)) in iv.intervals.iter().enumerate() {
                out.push_str(&format!("{v} {a} {b}\n"));
            }
        }
        GeometricModel::Arc(am) => {
            out.push_str(&format!(" {}\n", am.circumference));
            for (v, a) in am.arcs.iter().enumerate() {
                out.push_str(&format!("{v} {} {}\n", a.left, a.right));
            }
        }
        GeometricModel::Trapezoid(tm) => {
            let kind = match tm.kind {
                TrapezoidKind::Proper => "proper",
                TrapezoidKind::SemiProper => "semi-proper",
            };
            out.push_str(&format!(" {kind}\n"));
            for (v, t) in tm.traps.iter().enumerate() {
                out.push_str(&format!("{v} {} {} {} {}\n", t.t1, t.t2, t.b1, t.b2));
            }
        }
        GeometricModel::Permutation(p) => {
            out.push('\n');
            for (v, (a, b)) in p.l1.iter().zip(&p.l2).enumerate() {
                out.push_str(&format!("{v} {a} {b}\n"));
            }
        }
        GeometricModel::Ordering(o) => {
            out.push_str("\norder");
            for v in &o.order {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        GeometricModel::CliqueTree(t) => {
            out.push('\n');
            for (i, bag) in t.bags.iter().enumerate() {
                let parent = t.parent[i].map_or("-".to_string(), |p| p.to_string());
                out.push_str(&format!("bag {i} {parent}"));
                for v in bag {
                    out.push_str(&format!(" {v}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Node lines `v x1 .. xk`, numbered from 0.
fn node_rows(rows: &[(usize, Vec<&str>)], k: usize) -> Result<Vec<Vec<u64>>, FormatError> {
    rows.iter()
        .enumerate()
        .map(|(v, (l, words))| {
            let x: Vec<u64> = nums(*l, words, k + 1)?;
            if x[0] != v as u64 {
                return syntax(*l, format!("expected node {v}"));
            }
            Ok(x[1..].to_vec())
        })
        .collect()
}

pub fn parse_model(text: &str) -> Result<GeometricModel, FormatError> {
    let mut it = lines(text);
    let (l0, head) = it.next().ok_or_else(|| FormatError::Eof("missing `class` header".into()))?;
    if head[0] != "class" || head.len() < 2 {
        return syntax(l0, "expected `class <kind>`");
    }
    let rows: Vec<(usize, Vec<&str>)> = it.collect();
    let extra = &head[2..];
    let no_extra = || if extra.is_empty() { Ok(()) } else { syntax(l0, "unexpected words after the class") };
    let model = match head[1] {
        "interval" => {
            no_extra()?;
            let r = node_rows(&rows, 2)?;
            GeometricModel::Interval(IntervalModel { intervals: r.iter().map(|x| (x[0], x[1])).collect() })
        }
        "arc" => {
            let c: Vec<u64> = nums(l0, extra, 1)?;
            let r = node_rows(&rows, 2)?;
            GeometricModel::Arc(ArcModel {
                circumference: c[0],
                arcs: r.iter().map(|x| Arc { left: x[0], right: x[1] }).collect(),
            })
        }
        "trapezoid" => {
            let kind = match extra {
                ["proper"] => TrapezoidKind::Proper,
                ["semi-proper"] => TrapezoidKind::SemiProper,
                _ => return syntax(l0, "expected `class trapezoid proper|semi-proper`"),
            };
            let r = node_rows(&rows, 4)?;
            let traps = r.iter().map(|x| Trapezoid { t1: x[0], t2: x[1], b1: x[2], b2: x[3] }).collect();
            GeometricModel::Trapezoid(TrapezoidModel { kind, traps })
        }
        "permutation" => {
            no_extra()?;
            let r = node_rows(&rows, 2)?;
            GeometricModel::Permutation(PermutationModel {
                l1: r.iter().map(|x| x[0]).collect(),
                l2: r.iter().map(|x| x[1]).collect(),
            })
        }
        "ordering" => {
            no_extra()?;
            match rows.as_slice() {
                [(l, words)] if words[0] == "order" => {
                    let order = words[1..].iter().map(|w| num(*l, w)).collect::<Result<_, _>>()?;
                    GeometricModel::Ordering(Ordering { order })
                }
                [(l, _), ..] => return syntax(*l, "expected a single `order v0 v1 ...` line"),
                [] => return Err(FormatError::Eof("missing `order` line".into())),
            }
        }
        "clique-tree" => {
            no_extra()?;
            let mut bags = Vec::new();
            let mut parent = Vec::new();
            for (i, (l, words)) in rows.iter().enumerate() {
                if words.len() < 3 || words[0] != "bag" || num::<usize>(*l, words[1])? != i {
                    return syntax(*l, format!("expected `bag {i} parent|- v...`"));
                }
                parent.push(if words[2] == "-" { None } else { Some(num(*l, words[2])?) });
                bags.push(words[3..].iter().map(|w| num(*l, w)).collect::<Result<Vec<usize>, _>>()?);
            }
            GeometricModel::CliqueTree(CliqueTree { bags, parent })
        }
        other => return syntax(l0, format!("unknown class `{other}`")),
    };
    Ok(model)
}

/// Certificates of one run, as written by `prove` and read by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub scheme: Scheme,
    pub certificates: Vec<Certificate>,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
    }
}

/// Verification of a certificate file against a graph. A file that does not parse, has
/// the wrong scheme or the wrong number of certificates rejects at every node; a
/// certificate whose layout or domains differ from the scheme's rejects at its node.
/// The second component lists the diagnostics behind file-level rejections.
pub fn verify_certificate_text(scheme: Scheme, g: &Graph, text: &str, seed: u64) -> (RunReport, Vec<String>) {
    let everywhere = |why: String| {
        let rejecting_ids: Vec<u64> = g.ids().to_vec();
        let report = RunReport {
            scheme,
            n: g.n(),
            verdict: RunVerdict::Reject,
            reasons: rejecting_ids.iter().map(|&id| (id, why.clone())).collect(),
            rejecting_ids,
            max_cert_bits: 0,
            seed,
            wall_time: Default::default(),
        };
        (report, vec![why])
    };
    let file = match CertificateFile::from_json(text) {
        Ok(f) => f,
        Err(e) => return everywhere(e.to_string()),
    };
    if file.scheme != scheme {
        return everywhere(format!("file holds `{}` certificates", file.scheme));
    }
    if file.certificates.len() != g.n() {
        return everywhere(format!("{} certificates for {} nodes", file.certificates.len(), g.n()));
    }
    let Some(verify) = schemes::verifier(scheme) else {
        return everywhere(format!("`{scheme}` has no stand-alone verifier"));
    };
    let template = schemes::template(scheme, &Dims::of(g));
    let misshapen: Vec<u64> = (0..g.n())
        .filter(|&v| {
            let c = &file.certificates[v];
            c.scheme != scheme || !c.in_domain() || !same_layout(c, &template)
        })
        .map(|v| g.id(v))
        .collect();
    let mut report = run_pls_with(scheme, g, &file.certificates, &verify, RunOptions { seed, shuffle_neighbors: true });
    for id in misshapen {
        report.reasons.retain(|r| r.0 != id);
        report.reasons.push((id, "certificate does not match the scheme's layout".into()));
    }
    report.reasons.sort();
    report.rejecting_ids = report.reasons.iter().map(|r| r.0).collect();
    if !report.rejecting_ids.is_empty() {
        report.verdict = RunVerdict::Reject;
    }
    (report, Vec::new())
}

/// Same field names, nesting and domains.
fn same_layout(c: &Certificate, template: &Certificate) -> bool {
    fn walk(a: &[Field], b: &[Field]) -> bool {
        a.len() == b.len()
            && a.iter().zip(b).all(|(x, y)| match (x, y) {
                (Field::Int(x), Field::Int(y)) => x.name == y.name && x.domain == y.domain && x.kind == y.kind,
                (Field::Sub { name: p, fields: f }, Field::Sub { name: q, fields: h }) => p == q && walk(f, h),
                _ => false,
            })
    }
    walk(&c.fields, &template.fields)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::random_model;

    #[test]
    fn edge_list_round_trip_and_rejections() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let relabeled = g.relabel_ids(vec![9, 3, 27, 1]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&relabeled)).unwrap(), relabeled);
        assert!(matches!(parse_edge_list("3 2\n0 1\n1 2\nextra"), Err(FormatError::Syntax { line: 4, .. })));
        assert!(matches!(parse_edge_list("3 2\n1 2\n0 1\n"), Err(FormatError::Syntax { line: 3, .. })));
        assert!(matches!(parse_edge_list("2 0\n"), Err(FormatError::Graph(GraphError::DisconnectedGraph))));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(FormatError::Eof(_))));
    }

    #[test]
    fn model_files_round_trip() {
        for class in Scheme::CLASSES {
            for seed in 0..3 {
                let (_, m) = random_model(class, 7, seed).unwrap();
                assert_eq!(parse_model(&write_model(&m)).unwrap(), m, "{class}");
            }
        }
        let o = GeometricModel::Ordering(Ordering { order: vec![2, 0, 1] });
        assert_eq!(parse_model(&write_model(&o)).unwrap(), o);
        assert!(parse_model("class interval\n1 1 2\n").is_err());
        assert!(parse_model("class blob\n").is_err());
    }

    #[test]
    fn certificate_files_verify_or_reject() {
        let (g, m) = random_model(Scheme::Interval, 8, 2).unwrap();
        let certificates = schemes::prove(Scheme::Interval, &g, &m).unwrap();
        let file = CertificateFile { scheme: Scheme::Interval, certificates };
        let text = file.to_json();
        assert!(verify_certificate_text(Scheme::Interval, &g, &text, 0).0.accepted());

        let (r, diag) = verify_certificate_text(Scheme::Interval, &g, &text[..text.len() / 2], 0);
        assert_eq!(r.rejecting_ids.len(), 8);
        assert_eq!(diag.len(), 1);
        let (r, _) = verify_certificate_text(Scheme::Chordal, &g, &text, 0);
        assert_eq!(r.rejecting_ids, g.ids());

        let mut widened = file.clone();
        let leaf = widened.certificates[3].leaves_mut().into_iter().next().unwrap();
        leaf.domain.hi += 1;
        let (r, diag) = verify_certificate_text(Scheme::Interval, &g, &widened.to_json(), 0);
        assert!(r.rejecting_ids.contains(&g.id(3)) && diag.is_empty());
    }
}

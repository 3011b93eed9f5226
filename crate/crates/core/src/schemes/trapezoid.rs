//! Trapezoid graphs and, through consecutive trapezoids, permutation graphs.
//!
//! Each node holds its trapezoid. Coordinates `1..=2n` on both lines must each be used
//! exactly once; nodes cannot see that directly, so the scheme adds the first uncovered
//! coordinate to the right of each trapezoid and paths joining the owners of the two
//! extreme coordinates on each line. A semi-proper model is then proper when no
//! trapezoid covers a non-neighbour's coordinate and, at every node, the number of
//! non-neighbour coordinates to the left agrees on both lines.

use super::SchemeError;
use crate::models::{PermutationModel, Trapezoid, TrapezoidKind, TrapezoidModel};
use crate::runtime::toolbox::{
    decode_view, path_check, path_prove, size_check, size_prove, spanning_tree_check, spanning_tree_prove, PathCert,
    SizeCert, SpanningTreeCert,
};
use crate::runtime::{CertCodec, CertReader, CertWriter, Domain, NodeView, Verdict};
use crate::{ensure, Graph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrapezoidCert {
    /// Rooted at the owner of top coordinate 1.
    pub size: SizeCert,
    /// Rooted at the owner of bottom coordinate 1.
    pub anchor: SpanningTreeCert,
    pub t1: u64,
    pub t2: u64,
    pub b1: u64,
    pub b2: u64,
    /// First top coordinate right of `t1` owned by no node of the closed neighbourhood,
    /// `2n + 1` if there is none.
    pub p: u64,
    /// Bottom analogue of `p`.
    pub q: u64,
    pub top: PathCert,
    pub bottom: PathCert,
}

impl CertCodec for TrapezoidCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let n = w.dims().n;
        let coord = Domain::new(1, 2 * n);
        let scan = Domain::new(1, 2 * n + 1);
        w.sub("size", &self.size)
            .sub("anchor", &self.anchor)
            .int("t1", self.t1, coord)
            .int("t2", self.t2, coord)
            .int("b1", self.b1, coord)
            .int("b2", self.b2, coord)
            .int("p", self.p, scan)
            .int("q", self.q, scan)
            .sub("top", &self.top)
            .sub("bottom", &self.bottom);
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(TrapezoidCert {
            size: r.sub("size")?,
            anchor: r.sub("anchor")?,
            t1: r.int("t1")?,
            t2: r.int("t2")?,
            b1: r.int("b1")?,
            b2: r.int("b2")?,
            p: r.int("p")?,
            q: r.int("q")?,
            top: r.sub("top")?,
            bottom: r.sub("bottom")?,
        })
    }
}

impl TrapezoidCert {
    fn trapezoid(&self) -> Trapezoid {
        Trapezoid { t1: self.t1, t2: self.t2, b1: self.b1, b2: self.b2 }
    }
}

/// First coordinate right of `from` that no interval in `owned` has as an endpoint.
fn first_free(from: u64, owned: &[(u64, u64)], limit: u64) -> u64 {
    (from + 1..=limit).find(|&x| owned.iter().all(|&(a, b)| a != x && b != x)).unwrap_or(limit + 1)
}

pub fn trapezoid_prove(g: &Graph, m: &TrapezoidModel) -> Result<Vec<TrapezoidCert>, SchemeError> {
    if m.kind != TrapezoidKind::Proper {
        return Err(SchemeError::witness("trapezoid model is not proper"));
    }
    m.check_represents(g).map_err(SchemeError::from_model)?;
    let n = g.n();
    let limit = 2 * n as u64;
    let owner = |f: &dyn Fn(&Trapezoid) -> bool| m.traps.iter().position(f).expect("coordinates cover 1..=2n");
    let top_first = owner(&|t| t.t1 == 1);
    let top_last = owner(&|t| t.t2 == limit);
    let bottom_first = owner(&|t| t.b1 == 1);
    let bottom_last = owner(&|t| t.b2 == limit);
    let size = size_prove(g, top_first);
    let anchor = spanning_tree_prove(g, bottom_first);
    let top = path_prove(g, top_first, top_last);
    let bottom = path_prove(g, bottom_first, bottom_last);
    Ok((0..n)
        .map(|v| {
            let t = m.traps[v];
            let closed = std::iter::once(v).chain(g.neighbors(v).iter().copied());
            let tops: Vec<(u64, u64)> = closed.clone().map(|u| (m.traps[u].t1, m.traps[u].t2)).collect();
            let bottoms: Vec<(u64, u64)> = closed.map(|u| (m.traps[u].b1, m.traps[u].b2)).collect();
            TrapezoidCert {
                size: size[v],
                anchor: anchor[v],
                t1: t.t1,
                t2: t.t2,
                b1: t.b1,
                b2: t.b2,
                p: first_free(t.t1, &tops, limit),
                q: first_free(t.b1, &bottoms, limit),
                top: top[v],
                bottom: bottom[v],
            }
        })
        .collect())
}

pub fn permutation_prove(g: &Graph, m: &PermutationModel) -> Result<Vec<TrapezoidCert>, SchemeError> {
    m.check_represents(g).map_err(SchemeError::from_model)?;
    trapezoid_prove(g, &m.to_consecutive_trapezoids())
}

/// `f` of one line: coordinates left of `x1` minus those owned by neighbours.
fn non_neighbour_count(x1: u64, nbr_coords: &mut Vec<u64>) -> u64 {
    nbr_coords.retain(|&x| x < x1);
    nbr_coords.sort_unstable();
    nbr_coords.dedup();
    x1 - 1 - nbr_coords.len() as u64
}

/// One line's interval, scan and neighbour checks. `nbr` yields each neighbour's
/// interval and scan value on this line.
fn check_line(x1: u64, x2: u64, scan: u64, nbr: &[(u64, u64, u64)]) -> Verdict {
    let owned_by_nbr = |x: u64| nbr.iter().any(|&(a, b, _)| a == x || b == x);
    ensure!((x1 + 1..x2).all(owned_by_nbr), "covered coordinate not owned by a neighbour");
    ensure!(x2 < scan, "scan value is not right of the trapezoid");
    ensure!(
        (x1 + 1..scan).all(|x| x == x2 || owned_by_nbr(x)),
        "scan skips a coordinate not owned by the neighbourhood"
    );
    ensure!(!owned_by_nbr(scan), "scan value is owned by a neighbour");
    for (i, &(_, _, s)) in nbr.iter().enumerate() {
        if s < x2 {
            let other = nbr.iter().enumerate().any(|(j, &(a, b, _))| j != i && (a == s || b == s));
            ensure!(other, "neighbour's scan value is owned by no other neighbour");
        }
    }
    Verdict::Accept
}

fn check(my_id: u64, me: &TrapezoidCert, nbrs: &[(u64, TrapezoidCert)]) -> Verdict {
    let v = size_check(my_id, &me.size, nbrs.iter().map(|(id, c)| (*id, &c.size)));
    if !v.is_accept() {
        return v;
    }
    let n = me.size.claimed_n;
    let limit = 2 * n;
    ensure!(
        me.t1 < me.t2 && me.b1 < me.b2 && me.t1 >= 1 && me.b1 >= 1 && me.t2 <= limit && me.b2 <= limit,
        "trapezoid outside [1, 2n]"
    );
    ensure!(me.p <= limit + 1 && me.q <= limit + 1, "scan value outside [1, 2n + 1]");
    ensure!((my_id == me.size.tree.root) == (me.t1 == 1), "size root must own top coordinate 1");
    let v = spanning_tree_check(my_id, &me.anchor, nbrs.iter().map(|(id, c)| (*id, &c.anchor)));
    if !v.is_accept() {
        return v;
    }
    ensure!((my_id == me.anchor.root) == (me.b1 == 1), "anchor root must own bottom coordinate 1");
    let v = path_check(my_id, me.t1 == 1, me.t2 == limit, &me.top, nbrs.iter().map(|(id, c)| (*id, &c.top)));
    if !v.is_accept() {
        return v;
    }
    let v = path_check(my_id, me.b1 == 1, me.b2 == limit, &me.bottom, nbrs.iter().map(|(id, c)| (*id, &c.bottom)));
    if !v.is_accept() {
        return v;
    }
    let mine = me.trapezoid();
    ensure!(
        nbrs.iter().all(|(_, c)| crate::models::trapezoids_intersect(&mine, &c.trapezoid())),
        "neighbour trapezoid does not intersect mine"
    );
    let tops: Vec<(u64, u64, u64)> = nbrs.iter().map(|(_, c)| (c.t1, c.t2, c.p)).collect();
    let bottoms: Vec<(u64, u64, u64)> = nbrs.iter().map(|(_, c)| (c.b1, c.b2, c.q)).collect();
    let v = check_line(me.t1, me.t2, me.p, &tops);
    if !v.is_accept() {
        return v;
    }
    let v = check_line(me.b1, me.b2, me.q, &bottoms);
    if !v.is_accept() {
        return v;
    }
    let (ft, fb) = local_counts(me, nbrs.iter().map(|(_, c)| c));
    ensure!(ft == fb, "non-neighbour counts differ between the lines");
    Verdict::Accept
}

/// `(f_t, f_b)` computed from the neighbourhood alone.
pub fn local_counts<'a>(me: &TrapezoidCert, nbrs: impl Iterator<Item = &'a TrapezoidCert> + Clone) -> (u64, u64) {
    let mut top: Vec<u64> = nbrs.clone().flat_map(|c| [c.t1, c.t2]).collect();
    let mut bottom: Vec<u64> = nbrs.flat_map(|c| [c.b1, c.b2]).collect();
    (non_neighbour_count(me.t1, &mut top), non_neighbour_count(me.b1, &mut bottom))
}

/// `(f_t, f_b)` from the definition: coordinates left of the trapezoid owned by
/// non-neighbours, on each line.
pub fn global_counts(g: &Graph, m: &TrapezoidModel, v: usize) -> (u64, u64) {
    let t = m.traps[v];
    let others = (0..g.n()).filter(|&w| w != v && !g.has_edge(v, w));
    let ft = others.clone().flat_map(|w| [m.traps[w].t1, m.traps[w].t2]).filter(|&x| x < t.t1).count();
    let fb = others.flat_map(|w| [m.traps[w].b1, m.traps[w].b2]).filter(|&x| x < t.b1).count();
    (ft as u64, fb as u64)
}

pub fn trapezoid_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<TrapezoidCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    check(view.id, &me, &nbrs)
}

pub fn permutation_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<TrapezoidCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    ensure!(me.t2 == me.t1 + 1 && me.b2 == me.b1 + 1, "trapezoid is not consecutive");
    ensure!(me.t1 % 2 == 1 && me.b1 % 2 == 1, "consecutive pair does not start at an odd coordinate");
    check(view.id, &me, &nbrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct_q;
    use crate::models::q_permutation_model;
    use crate::runtime::toolbox::encode_all;
    use crate::runtime::{run_pls, Scheme};

    #[test]
    fn crossing_pair_uses_the_sentinel() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let m = TrapezoidModel {
            kind: TrapezoidKind::Proper,
            traps: vec![Trapezoid { t1: 1, t2: 2, b1: 3, b2: 4 }, Trapezoid { t1: 3, t2: 4, b1: 1, b2: 2 }],
        };
        let certs = trapezoid_prove(&g, &m).unwrap();
        assert!(certs.iter().all(|c| c.p == 5 && c.q == 5));
        let enc = encode_all(Scheme::Trapezoid, &g, &certs);
        assert!(run_pls(Scheme::Trapezoid, &g, &enc, &trapezoid_verify).accepted());
    }

    #[test]
    fn three_node_path_scans() {
        // Nodes 0 and 2 sit apart, node 1 spans both.
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let m = TrapezoidModel {
            kind: TrapezoidKind::Proper,
            traps: vec![
                Trapezoid { t1: 1, t2: 3, b1: 1, b2: 3 },
                Trapezoid { t1: 2, t2: 5, b1: 2, b2: 5 },
                Trapezoid { t1: 4, t2: 6, b1: 4, b2: 6 },
            ],
        };
        let certs = trapezoid_prove(&g, &m).unwrap();
        // Node 0 owns 1 and 3 and its neighbour owns 2 and 5: first free is 4.
        assert_eq!((certs[0].p, certs[0].q), (4, 4));
        assert_eq!((certs[1].p, certs[1].q), (7, 7));
        assert_eq!((certs[2].p, certs[2].q), (7, 7));
        let enc = encode_all(Scheme::Trapezoid, &g, &certs);
        assert!(run_pls(Scheme::Trapezoid, &g, &enc, &trapezoid_verify).accepted());
    }

    #[test]
    fn q_models_accept_as_permutations() {
        for k in 1..=3 {
            let g = construct_q(k).unwrap();
            let pm = q_permutation_model(k);
            let certs = permutation_prove(&g, &pm).unwrap();
            let direct = trapezoid_prove(&g, &pm.to_consecutive_trapezoids()).unwrap();
            assert_eq!(certs, direct);
            let enc = encode_all(Scheme::Permutation, &g, &certs);
            assert!(run_pls(Scheme::Permutation, &g, &enc, &permutation_verify).accepted());
        }
    }

    #[test]
    fn local_counts_match_the_definition() {
        for seed in 0..30 {
            let (g, m) = crate::models::random_model(Scheme::Trapezoid, 12, seed).unwrap();
            let crate::models::GeometricModel::Trapezoid(tm) = m else { unreachable!() };
            let certs = trapezoid_prove(&g, &tm).unwrap();
            for v in 0..g.n() {
                let nbrs = g.neighbors(v).iter().map(|&u| &certs[u]);
                let (ft, fb) = local_counts(&certs[v], nbrs);
                assert_eq!((ft, fb), global_counts(&g, &tm, v));
                assert_eq!(ft, fb);
            }
        }
    }
}

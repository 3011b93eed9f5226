//! Proper circular-arc graphs (circularly compatible ones) and circular-arc graphs
//! (quasi-circular ones). Positions live on a cycle of the certified length `N`.

use super::SchemeError;
use crate::models::{Arc, ArcModel, Ordering};
use crate::oracles::AugmentedAdjacency;
use crate::runtime::toolbox::{decode_view, size_check, size_prove, SizeCert};
use crate::runtime::{CertCodec, CertReader, CertWriter, Domain, NodeView, Verdict};
use crate::{ensure, Graph};

/// Counter-clockwise distance from `a` to `b` on a cycle of length `m`.
fn off(a: u64, b: u64, m: u64) -> u64 {
    (b + m - a % m) % m
}

fn covers(a: Arc, x: u64, c: u64) -> bool {
    off(a.left, x, c) <= off(a.left, a.right, c)
}

fn arcs_intersect(a: Arc, b: Arc, c: u64) -> bool {
    covers(a, b.left, c) || covers(b, a.left, c)
}

fn arc_contains(a: Arc, b: Arc, c: u64) -> bool {
    let (l, r) = (off(a.left, b.left, c), off(a.left, b.right, c));
    l <= r && r <= off(a.left, a.right, c)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProperCircCert {
    pub r: u64,
    pub l: u64,
    /// Identifier of the node at position 0.
    pub first: u64,
    pub size: SizeCert,
    pub pos: u64,
    /// Closed neighbourhood as the circular position range `lo..=hi`.
    pub lo: u64,
    pub hi: u64,
}

impl CertCodec for ProperCircCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        let coord = Domain::new(1, 4 * d.n);
        let pos = Domain::new(0, d.n - 1);
        w.int("r", self.r, coord)
            .int("l", self.l, coord)
            .id("first", self.first, d.id())
            .sub("size", &self.size)
            .int("pos", self.pos, pos)
            .int("lo", self.lo, pos)
            .int("hi", self.hi, pos);
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(ProperCircCert {
            r: r.int("r")?,
            l: r.int("l")?,
            first: r.int("first")?,
            size: r.sub("size")?,
            pos: r.int("pos")?,
            lo: r.int("lo")?,
            hi: r.int("hi")?,
        })
    }
}

/// Closed-neighbourhood runs of every position: `(lo, hi)` with `lo = pos + 1` for
/// universal nodes. `None` if some neighbourhood is not a circular run.
fn circular_runs(g: &Graph, order: &[usize]) -> Option<Vec<(u64, u64)>> {
    let n = order.len();
    let m = AugmentedAdjacency::new(g, order);
    (0..n)
        .map(|p| {
            let len = (0..n).filter(|&i| m.get(i, p)).count();
            if len == n {
                return Some((((p + 1) % n) as u64, p as u64));
            }
            let back = (0..n).take_while(|&d| m.get((p + n - d) % n, p)).count();
            let fwd = (0..n).take_while(|&d| m.get((p + d) % n, p)).count();
            (back + fwd - 1 == len).then(|| (((p + n + 1 - back) % n) as u64, ((p + fwd - 1) % n) as u64))
        })
        .collect()
}

/// Endpoints ranked to `1..=2n` in circular order, rotated so that `start` maps to 1.
fn compress(arcs: &ArcModel, start: u64) -> Vec<Arc> {
    let c = arcs.circumference;
    let mut pts: Vec<(u64, usize, bool)> = Vec::new();
    for (v, a) in arcs.arcs.iter().enumerate() {
        pts.push((off(start, a.left, c), v, true));
        pts.push((off(start, a.right, c), v, false));
    }
    pts.sort_unstable();
    let mut out = vec![Arc { left: 0, right: 0 }; arcs.arcs.len()];
    for (i, &(_, v, is_left)) in pts.iter().enumerate() {
        if is_left {
            out[v].left = i as u64 + 1;
        } else {
            out[v].right = i as u64 + 1;
        }
    }
    out
}

/// Certificates from a proper arc model and an ordering of its nodes by right endpoint
/// (any rotation). The ordering is rotated so that the only consecutive non-adjacent
/// pair, if any, wraps around.
pub fn proper_circ_prove(g: &Graph, ordering: &Ordering, arcs: &ArcModel) -> Result<Vec<ProperCircCert>, SchemeError> {
    let n = g.n();
    arcs.check_represents(g).map_err(SchemeError::from_model)?;
    if !arcs.is_proper() {
        return Err(SchemeError::witness("arc model is not proper"));
    }
    if !ordering.is_permutation_of(n) {
        return Err(SchemeError::witness("ordering is not a permutation of the nodes"));
    }
    let c = arcs.circumference;
    let r = |i: usize| arcs.arcs[ordering.order[i]].right;
    let descents = (0..n).filter(|&i| off(r(0), r(i), c) > off(r(0), r((i + 1) % n), c)).count();
    if n > 1 && descents != 1 {
        return Err(SchemeError::witness("ordering does not follow the right endpoints"));
    }
    let gap = (0..n).find(|&i| !g.has_edge(ordering.order[i], ordering.order[(i + 1) % n]) && n > 1);
    let shift = gap.map_or(0, |i| (i + 1) % n);
    let order: Vec<usize> = (0..n).map(|p| ordering.order[(p + shift) % n]).collect();
    let runs = circular_runs(g, &order).ok_or_else(|| SchemeError::witness("neighbourhoods are not circular runs"))?;
    let coords = compress(arcs, arcs.arcs[order[0]].right);
    let first = g.id(order[0]);
    let size = size_prove(g, order[0]);
    let mut certs = vec![ProperCircCert::default(); n];
    for (p, &v) in order.iter().enumerate() {
        certs[v] = ProperCircCert {
            r: coords[v].right,
            l: coords[v].left,
            first,
            size: size[v],
            pos: p as u64,
            lo: runs[p].0,
            hi: runs[p].1,
        };
    }
    Ok(certs)
}

pub fn proper_circ_prove_from_arcs(g: &Graph, arcs: &ArcModel) -> Result<Vec<ProperCircCert>, SchemeError> {
    let ordering = Ordering { order: arcs.order_by(|a| a.right) };
    proper_circ_prove(g, &ordering, arcs)
}

pub fn proper_circ_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<ProperCircCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    let v = size_check(view.id, &me.size, nbrs.iter().map(|(id, c)| (*id, &c.size)));
    if !v.is_accept() {
        return v;
    }
    let n = me.size.claimed_n;
    let circ = 4 * n;
    ensure!(me.size.tree.root == me.first, "size tree is not rooted at the first node");
    ensure!(nbrs.iter().all(|(_, c)| c.first == me.first), "neighbours disagree on the first node");
    ensure!(me.pos < n && me.lo < n && me.hi < n, "position outside the cycle");
    ensure!(me.r <= circ && me.l <= circ && me.r != me.l, "arc endpoints outside the circle");
    ensure!((me.pos == 0) == (view.id == me.first), "only the first node sits at position 0");

    let span = off(me.lo, me.hi, n);
    ensure!(off(me.lo, me.pos, n) <= span, "range does not contain my position");
    ensure!(nbrs.len() as u64 == span, "neighbour count differs from the range");
    let mut seen = vec![false; span as usize + 1];
    for (_, u) in &nbrs {
        let d = off(me.lo, u.pos, n);
        ensure!(u.pos != me.pos && d <= span, "neighbour outside my range");
        ensure!(!std::mem::replace(&mut seen[d as usize], true), "two neighbours share a position");
    }
    let at = |p: u64| nbrs.iter().find(|(_, c)| c.pos == p).map(|(_, c)| c);
    if me.pos + 1 < n {
        ensure!(at(me.pos + 1).is_some(), "no neighbour at the next position");
    }
    if me.pos > 0 {
        ensure!(at(me.pos - 1).is_some(), "no neighbour at the previous position");
    }

    let mine = Arc { left: me.l, right: me.r };
    for (_, u) in &nbrs {
        let theirs = Arc { left: u.l, right: u.r };
        ensure!(u.r <= circ && u.l <= circ, "neighbour arc outside the circle");
        ensure!(arcs_intersect(mine, theirs, circ), "neighbour arcs do not intersect");
        ensure!(!arc_contains(mine, theirs, circ) && !arc_contains(theirs, mine, circ), "neighbour arcs are nested");
    }
    if me.pos + 1 < n {
        let s = at(me.pos + 1).unwrap();
        ensure!(s.r > me.r, "successor's right endpoint is not larger");
        let gap = off(me.l, s.l, circ);
        ensure!(
            nbrs.iter().all(|(_, u)| u.l == s.l || off(me.l, u.l, circ) > gap),
            "successor's left endpoint does not follow mine"
        );
    }

    let universal = |c: &ProperCircCert| off(c.lo, c.hi, n) + 1 == n;
    if !universal(&me) {
        if let Some(s) = at((me.pos + 1) % n).filter(|s| !universal(s)) {
            ensure!(off(me.pos, me.hi, n) <= off(me.pos, s.hi, n), "rotation breaks circular compatibility");
        }
        if let Some(w) = at((me.pos + n - 1) % n).filter(|w| !universal(w)) {
            ensure!(off(me.lo, me.pos, n) <= off(w.lo, me.pos, n), "reflection breaks circular compatibility");
        }
    }
    Verdict::Accept
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CircCert {
    pub pos: u64,
    /// Length of the run of ones below the diagonal in my column.
    pub run: u64,
    pub size: SizeCert,
}

impl CertCodec for CircCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let n = w.dims().n;
        w.int("pos", self.pos, Domain::new(0, n - 1)).int("run", self.run, Domain::new(1, n)).sub("size", &self.size);
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(CircCert { pos: r.int("pos")?, run: r.int("run")?, size: r.sub("size")? })
    }
}

/// Whether some member of the closed neighbourhood of the node at `p` has a run
/// covering both `p` and `p + 1`.
fn bridged(g: &Graph, pos: &[usize], runs: &[usize], v: usize, n: usize) -> bool {
    let p = pos[v];
    let cover = |x: usize, q: usize| (q + n - pos[x]) % n < runs[x];
    std::iter::once(v).chain(g.neighbors(v).iter().copied()).any(|x| cover(x, p) && cover(x, (p + 1) % n))
}

/// Certificates from an ordering whose augmented adjacency matrix has quasi-circular
/// ones. The ordering is rotated so that every position but the last is bridged.
pub fn circ_prove(g: &Graph, ordering: &Ordering) -> Result<Vec<CircCert>, SchemeError> {
    let n = g.n();
    if !ordering.is_permutation_of(n) {
        return Err(SchemeError::witness("ordering is not a permutation of the nodes"));
    }
    let m = AugmentedAdjacency::new(g, &ordering.order);
    if !m.has_quasi_circular_ones() {
        return Err(SchemeError::witness("ordering lacks quasi-circular ones"));
    }
    let mut runs = vec![0; n];
    for p in 0..n {
        runs[ordering.order[p]] = m.down_run(p);
    }
    let base = ordering.positions();
    let shift = (0..n)
        .find(|&k| {
            let pos: Vec<usize> = base.iter().map(|&p| (p + n - k) % n).collect();
            (0..n).all(|v| pos[v] + 1 >= n || bridged(g, &pos, &runs, v, n))
        })
        .ok_or_else(|| SchemeError::witness("no rotation bridges consecutive positions"))?;
    let pos: Vec<usize> = base.iter().map(|&p| (p + n - shift) % n).collect();
    let first = pos.iter().position(|&p| p == 0).unwrap();
    let size = size_prove(g, first);
    Ok((0..n).map(|v| CircCert { pos: pos[v] as u64, run: runs[v] as u64, size: size[v] }).collect())
}

/// Orders the arcs by left endpoint.
pub fn circ_prove_from_arcs(g: &Graph, arcs: &ArcModel) -> Result<Vec<CircCert>, SchemeError> {
    arcs.check_represents(g).map_err(SchemeError::from_model)?;
    circ_prove(g, &Ordering { order: arcs.order_by(|a| a.left) })
}

pub fn circ_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<CircCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    let v = size_check(view.id, &me.size, nbrs.iter().map(|(id, c)| (*id, &c.size)));
    if !v.is_accept() {
        return v;
    }
    let n = me.size.claimed_n;
    ensure!(me.pos < n && me.run >= 1 && me.run <= n, "position or run outside the cycle");
    ensure!((me.pos == 0) == (view.id == me.size.tree.root), "only the size root sits at position 0");
    ensure!(nbrs.iter().all(|(_, c)| c.pos < n && c.run >= 1 && c.run <= n), "neighbour outside the cycle");
    ensure!(nbrs.iter().all(|(_, c)| c.pos != me.pos), "a neighbour shares my position");
    for d in 1..me.run {
        let p = (me.pos + d) % n;
        ensure!(nbrs.iter().filter(|(_, c)| c.pos == p).count() == 1, "run position without exactly one neighbour");
    }
    for (_, u) in &nbrs {
        let in_mine = off(me.pos, u.pos, n) < me.run;
        let in_theirs = off(u.pos, me.pos, n) < u.run;
        ensure!(in_mine || in_theirs, "edge covered by neither run");
    }
    if me.pos + 2 <= n {
        let covers_both = |c: &CircCert| off(c.pos, me.pos, n) < c.run && off(c.pos, (me.pos + 1) % n, n) < c.run;
        ensure!(
            covers_both(&me) || nbrs.iter().any(|(_, c)| covers_both(c)),
            "no run bridges my position and the next"
        );
    }
    Verdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::toolbox::encode_all;
    use crate::runtime::{run_pls, Scheme};

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::new(n, &e).unwrap()
    }

    /// Arcs of length three slots on a circle of `2n`, one starting every two slots.
    fn cycle_arcs(n: usize) -> ArcModel {
        let c = 2 * n as u64;
        let arcs = (0..n as u64).map(|i| Arc { left: 2 * i + 1, right: (2 * i + 3) % c + 1 }).collect();
        ArcModel { circumference: c, arcs }
    }

    #[test]
    fn cycles_accept_both_schemes() {
        for n in [4, 5, 7] {
            let g = cycle(n);
            let arcs = cycle_arcs(n);
            arcs.check_represents(&g).unwrap();
            let certs = proper_circ_prove_from_arcs(&g, &arcs).unwrap();
            let enc = encode_all(Scheme::ProperCircularArc, &g, &certs);
            let r = run_pls(Scheme::ProperCircularArc, &g, &enc, &proper_circ_verify);
            assert!(r.accepted(), "{:?}", r.reasons);
            let certs = circ_prove_from_arcs(&g, &arcs).unwrap();
            let enc = encode_all(Scheme::CircularArc, &g, &certs);
            assert!(run_pls(Scheme::CircularArc, &g, &enc, &circ_verify).accepted());
        }
    }

    #[test]
    fn c6_runs_have_length_two() {
        let g = cycle(6);
        let certs = circ_prove(&g, &Ordering { order: (0..6).collect() }).unwrap();
        assert!(certs.iter().all(|c| c.run == 2));
    }

    #[test]
    fn complete_graph_is_all_universal() {
        let e: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = Graph::new(4, &e).unwrap();
        let certs = circ_prove(&g, &Ordering { order: vec![0, 1, 2, 3] }).unwrap();
        assert!(certs.iter().all(|c| c.run == 4));
        let arcs = ArcModel { circumference: 8, arcs: (0..4).map(|i| Arc { left: i + 1, right: i + 5 }).collect() };
        let certs = proper_circ_prove_from_arcs(&g, &arcs).unwrap();
        assert!(certs.iter().all(|c| off(c.lo, c.hi, 4) == 3));
        let enc = encode_all(Scheme::ProperCircularArc, &g, &certs);
        assert!(run_pls(Scheme::ProperCircularArc, &g, &enc, &proper_circ_verify).accepted());
    }

    #[test]
    fn local_range_transforms_match_the_matrix() {
        for seed in 0..40 {
            let (g, m) = crate::models::random_model(Scheme::ProperCircularArc, 8, seed).unwrap();
            let crate::models::GeometricModel::Arc(arcs) = m else { unreachable!() };
            let certs = proper_circ_prove_from_arcs(&g, &arcs).unwrap();
            let n = g.n();
            let mut order = vec![0; n];
            for (v, c) in certs.iter().enumerate() {
                order[c.pos as usize] = v;
            }
            let mat = AugmentedAdjacency::new(&g, &order);
            for c in &certs {
                let k = c.pos as usize;
                if off(c.lo, c.hi, n as u64) + 1 == n as u64 {
                    assert_eq!(mat.apply_perm(&AugmentedAdjacency::shift(n, k)).last_index(0), None);
                    continue;
                }
                let shifted = mat.apply_perm(&AugmentedAdjacency::shift(n, k)).last_index(0);
                assert_eq!(shifted, Some(off(c.pos, c.hi, n as u64) as usize));
                let reflected = mat.apply_perm(&AugmentedAdjacency::reflect(n, k)).last_index(0);
                assert_eq!(reflected, Some(off(c.lo, c.pos, n as u64) as usize));
            }
        }
    }
}

//! Spanning tree, size and s-t path certification, usable on their own or nested.

use super::{CertCodec, CertReader, CertWriter, Certificate, Dims, Domain, NodeView, Scheme, Verdict};
use crate::{ensure, Graph};

/// Decodes a node's own certificate and those of its neighbours.
pub fn decode_view<C: CertCodec>(view: &NodeView) -> Option<(C, Vec<(u64, C)>)> {
    let me = C::from_certificate(view.cert)?;
    let mut nbrs = Vec::with_capacity(view.neighbors.len());
    for &(id, cert) in &view.neighbors {
        nbrs.push((id, C::from_certificate(cert)?));
    }
    Some((me, nbrs))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpanningTreeCert {
    pub root: u64,
    pub parent: u64,
    pub dist: u64,
    pub parent_dist: u64,
}

impl CertCodec for SpanningTreeCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        let depth = Domain::new(0, d.n - 1);
        w.id("root", self.root, d.id()).id("parent", self.parent, d.id()).int("dist", self.dist, depth).int(
            "parent_dist",
            self.parent_dist,
            depth,
        );
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(SpanningTreeCert {
            root: r.int("root")?,
            parent: r.int("parent")?,
            dist: r.int("dist")?,
            parent_dist: r.int("parent_dist")?,
        })
    }
}

/// BFS tree rooted at `root`.
pub fn spanning_tree_prove(g: &Graph, root: usize) -> Vec<SpanningTreeCert> {
    let (parent, dist) = g.bfs_tree(root);
    (0..g.n())
        .map(|v| SpanningTreeCert {
            root: g.id(root),
            parent: g.id(parent[v]),
            dist: dist[v] as u64,
            parent_dist: if v == root { 0 } else { dist[v] as u64 - 1 },
        })
        .collect()
}

pub fn spanning_tree_check<'a>(
    my_id: u64,
    me: &SpanningTreeCert,
    nbrs: impl Iterator<Item = (u64, &'a SpanningTreeCert)> + Clone,
) -> Verdict {
    ensure!(nbrs.clone().all(|(_, c)| c.root == me.root), "neighbours disagree on root");
    if my_id == me.root {
        ensure!(me.parent == my_id && me.dist == 0, "root must be its own parent at distance 0");
        return Verdict::Accept;
    }
    ensure!(me.parent != my_id, "non-root is its own parent");
    ensure!(me.dist == me.parent_dist + 1, "distance is not parent distance plus one");
    let parent = nbrs.clone().find(|(id, _)| *id == me.parent);
    match parent {
        Some((_, p)) => {
            ensure!(p.dist == me.parent_dist, "parent distance mismatch");
            Verdict::Accept
        }
        None => Verdict::reject("parent is not a neighbour"),
    }
}

pub fn spanning_tree_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<SpanningTreeCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    spanning_tree_check(view.id, &me, nbrs.iter().map(|(id, c)| (*id, c)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SizeCert {
    pub tree: SpanningTreeCert,
    pub count: u64,
    pub claimed_n: u64,
}

impl CertCodec for SizeCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let n = w.dims().n;
        w.sub("tree", &self.tree).int("count", self.count, Domain::new(1, n)).int(
            "claimed_n",
            self.claimed_n,
            Domain::new(1, 2 * n),
        );
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(SizeCert { tree: r.sub("tree")?, count: r.int("count")?, claimed_n: r.int("claimed_n")? })
    }
}

/// Subtree counts on a BFS tree rooted at `root`.
pub fn size_prove(g: &Graph, root: usize) -> Vec<SizeCert> {
    let tree = spanning_tree_prove(g, root);
    let (parent, dist) = g.bfs_tree(root);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
    let mut count = vec![1u64; g.n()];
    for &v in &order {
        if v != root {
            count[parent[v]] += count[v];
        }
    }
    (0..g.n()).map(|v| SizeCert { tree: tree[v], count: count[v], claimed_n: g.n() as u64 }).collect()
}

pub fn size_check<'a>(my_id: u64, me: &SizeCert, nbrs: impl Iterator<Item = (u64, &'a SizeCert)> + Clone) -> Verdict {
    let v = spanning_tree_check(my_id, &me.tree, nbrs.clone().map(|(id, c)| (id, &c.tree)));
    if !v.is_accept() {
        return v;
    }
    ensure!(nbrs.clone().all(|(_, c)| c.claimed_n == me.claimed_n), "neighbours disagree on n");
    let children: u64 =
        nbrs.clone().filter(|(id, c)| c.tree.parent == my_id && *id != me.tree.parent).map(|(_, c)| c.count).sum();
    ensure!(me.count == 1 + children, "count is not one plus the children's counts");
    if my_id == me.tree.root {
        ensure!(me.count == me.claimed_n, "root count differs from claimed n");
    }
    Verdict::Accept
}

pub fn size_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<SizeCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    size_check(view.id, &me, nbrs.iter().map(|(id, c)| (*id, c)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PathCert {
    pub on_path: u64,
    pub pred: u64,
    pub succ: u64,
}

impl CertCodec for PathCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        w.int("on_path", self.on_path, Domain::new(0, 1)).id("pred", self.pred, d.id_or_none()).id(
            "succ",
            self.succ,
            d.id_or_none(),
        );
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(PathCert { on_path: r.int("on_path")?, pred: r.int("pred")?, succ: r.int("succ")? })
    }
}

/// Marks a shortest (hence induced) path from `s` to `t`.
pub fn path_prove(g: &Graph, s: usize, t: usize) -> Vec<PathCert> {
    let path = g.shortest_path(s, t);
    let mut certs = vec![PathCert::default(); g.n()];
    for (i, &v) in path.iter().enumerate() {
        certs[v] = PathCert {
            on_path: 1,
            pred: if i > 0 { g.id(path[i - 1]) } else { 0 },
            succ: if i + 1 < path.len() { g.id(path[i + 1]) } else { 0 },
        };
    }
    certs
}

/// `is_s` / `is_t` are the node's own knowledge of being an endpoint.
pub fn path_check<'a>(
    my_id: u64,
    is_s: bool,
    is_t: bool,
    me: &PathCert,
    nbrs: impl Iterator<Item = (u64, &'a PathCert)> + Clone,
) -> Verdict {
    ensure!(me.on_path <= 1, "membership bit out of range");
    if me.on_path == 0 {
        ensure!(!is_s && !is_t, "endpoint is not on the path");
        ensure!(me.pred == 0 && me.succ == 0, "off-path node has path links");
        return Verdict::Accept;
    }
    let on = nbrs.clone().filter(|(_, c)| c.on_path == 1);
    if is_s {
        ensure!(me.pred == 0, "source has a predecessor");
    } else {
        ensure!(me.pred != 0, "missing predecessor");
        ensure!(
            on.clone().any(|(id, c)| id == me.pred && c.succ == my_id),
            "predecessor does not name me as successor"
        );
    }
    if is_t {
        ensure!(me.succ == 0, "target has a successor");
    } else {
        ensure!(me.succ != 0, "missing successor");
        ensure!(
            on.clone().any(|(id, c)| id == me.succ && c.pred == my_id),
            "successor does not name me as predecessor"
        );
    }
    let naming_pred = on.clone().filter(|(_, c)| c.pred == my_id).count();
    let naming_succ = on.clone().filter(|(_, c)| c.succ == my_id).count();
    ensure!(naming_pred == usize::from(!is_t), "wrong number of path successors");
    ensure!(naming_succ == usize::from(!is_s), "wrong number of path predecessors");
    let expected = usize::from(!is_s) + usize::from(!is_t);
    ensure!(on.count() == expected, "path is not induced");
    Verdict::Accept
}

pub fn path_verify(view: &NodeView, s_id: u64, t_id: u64) -> Verdict {
    let Some((me, nbrs)) = decode_view::<PathCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    path_check(view.id, view.id == s_id, view.id == t_id, &me, nbrs.iter().map(|(id, c)| (*id, c)))
}

pub fn encode_all<C: CertCodec>(scheme: Scheme, g: &Graph, certs: &[C]) -> Vec<Certificate> {
    let dims = Dims::of(g);
    certs.iter().map(|c| c.to_certificate(scheme, &dims)).collect()
}

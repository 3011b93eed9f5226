//! Clique-tree certificates for chordal graphs, and the clique-path variant for
//! interval graphs.
//!
//! Every node belongs to the class of its top bag (the bag of least depth containing it)
//! and is labelled with the smallest identifier of that class. A node with a deeper
//! neighbour follows parent labels from the neighbour's class up to its own, reading each
//! class's parent off the neighbours that belong to it, and must be adjacent to every
//! member of every class on the way.

use std::collections::HashMap;

use super::SchemeError;
use crate::models::{CliqueTree, Leaders};
use crate::runtime::toolbox::{decode_view, size_check, size_prove, SizeCert};
use crate::runtime::{CertCodec, CertReader, CertWriter, Domain, NodeView, Verdict};
use crate::{ensure, Graph};

pub const ROLE_NONE: u64 = 0;
/// Leader of the edge to a child class, vouching for that child.
pub const ROLE_EDGE_LEADER: u64 = 1;
/// Auxiliary node of a leaf class.
pub const ROLE_AUX: u64 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChordalCert {
    /// Number of bags of the clique tree.
    pub tree_size: u64,
    pub root_label: u64,
    pub label: u64,
    pub class_size: u64,
    pub depth: u64,
    pub parent_label: u64,
    pub role: u64,
    pub role_target: u64,
    pub role_depth: u64,
    pub size: SizeCert,
}

impl CertCodec for ChordalCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        let depth = Domain::new(0, d.n - 1);
        w.int("tree_size", self.tree_size, Domain::new(1, d.n))
            .id("root_label", self.root_label, d.id())
            .id("label", self.label, d.id())
            .int("class_size", self.class_size, Domain::new(1, d.n))
            .int("depth", self.depth, depth)
            .id("parent_label", self.parent_label, d.id())
            .int("role", self.role, Domain::new(0, 2))
            .id("role_target", self.role_target, d.id_or_none())
            .int("role_depth", self.role_depth, depth)
            .sub("size", &self.size);
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(ChordalCert {
            tree_size: r.int("tree_size")?,
            root_label: r.int("root_label")?,
            label: r.int("label")?,
            class_size: r.int("class_size")?,
            depth: r.int("depth")?,
            parent_label: r.int("parent_label")?,
            role: r.int("role")?,
            role_target: r.int("role_target")?,
            role_depth: r.int("role_depth")?,
            size: r.sub("size")?,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntervalCert {
    pub base: ChordalCert,
    /// Label of the unique child class, 0 for the last class of the path.
    pub child_label: u64,
}

impl CertCodec for IntervalCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        self.base.encode(w);
        w.id("child_label", self.child_label, d.id_or_none());
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(IntervalCert { base: ChordalCert::decode(r)?, child_label: r.int("child_label")? })
    }
}

/// Lemma-level data the prover derives from a rooted clique tree.
#[derive(Debug, Clone)]
pub struct Layout {
    pub tree: CliqueTree,
    /// `classes[b]`: nodes whose top bag is `b`.
    pub classes: Vec<Vec<usize>>,
    pub label: Vec<u64>,
    pub depth: Vec<usize>,
    /// `leader[b]` for every non-root bag that has a candidate in `b ∩ t(b) \ t(t(b))`.
    pub leader: Vec<Option<usize>>,
    pub aux: Vec<Option<usize>>,
}

impl Layout {
    fn new(g: &Graph, tree: CliqueTree, leaders: Option<Leaders>) -> Result<Self, SchemeError> {
        let classes = tree.trim_partition().map_err(SchemeError::from_model)?;
        let label = classes.iter().map(|c| c.iter().map(|&v| g.id(v)).min().unwrap()).collect();
        let depth = tree.depths();
        let root = tree.root();
        let (leader, aux) = match leaders {
            Some(l) => {
                let mut leader: Vec<Option<usize>> = l.leader.into_iter().map(Some).collect();
                leader[root] = None;
                (leader, l.aux)
            }
            None => {
                let children = tree.children();
                let leader =
                    (0..tree.len()).map(|b| tree.leader_candidates(b).into_iter().min_by_key(|&v| g.id(v))).collect();
                let aux = (0..tree.len())
                    .map(|b| {
                        let p = tree.parent[b]?;
                        if !children[b].is_empty() {
                            return None;
                        }
                        let parent_bag = &tree.bags[p];
                        tree.bags[b]
                            .iter()
                            .copied()
                            .filter(|v| parent_bag.binary_search(v).is_err())
                            .min_by_key(|&v| g.id(v))
                    })
                    .collect();
                (leader, aux)
            }
        };
        Ok(Layout { tree, classes, label, depth, leader, aux })
    }

    fn certs(&self, g: &Graph) -> Vec<ChordalCert> {
        let n = g.n();
        let t = &self.tree;
        let root = t.root();
        let mut class_of = vec![0; n];
        for (b, c) in self.classes.iter().enumerate() {
            for &v in c {
                class_of[v] = b;
            }
        }
        let mut role = vec![(ROLE_NONE, 0u64, 0u64); n];
        for b in 0..t.len() {
            if let Some(v) = self.leader[b] {
                let target = (self.label[b], self.depth[b] as u64);
                if role[v].0 != ROLE_EDGE_LEADER || target.0 < role[v].1 {
                    role[v] = (ROLE_EDGE_LEADER, target.0, target.1);
                }
            }
        }
        for b in 0..t.len() {
            if let Some(w) = self.aux[b] {
                role[w] = (ROLE_AUX, self.label[b], self.depth[b] as u64);
            }
        }
        let root_label = self.label[root];
        let size = size_prove(g, g.index_of(root_label).expect("label is a node id"));
        (0..n)
            .map(|v| {
                let b = class_of[v];
                ChordalCert {
                    tree_size: t.len() as u64,
                    root_label,
                    label: self.label[b],
                    class_size: self.classes[b].len() as u64,
                    depth: self.depth[b] as u64,
                    parent_label: self.label[t.parent[b].unwrap_or(b)],
                    role: role[v].0,
                    role_target: role[v].1,
                    role_depth: role[v].2,
                    size: size[v],
                }
            })
            .collect()
    }
}

/// Normalizes `tree`, picks leaders and encodes the classes.
pub fn chordal_layout(g: &Graph, tree: &CliqueTree) -> Result<Layout, SchemeError> {
    let t = tree.normalize(g).map_err(SchemeError::from_model)?;
    let leaders = t.choose_leaders(g).map_err(SchemeError::from_model)?;
    Layout::new(g, t, Some(leaders))
}

/// Roots a clique path at one end.
pub fn interval_layout(g: &Graph, tree: &CliqueTree) -> Result<Layout, SchemeError> {
    tree.validate(g).map_err(SchemeError::from_model)?;
    let t = tree.as_rooted_path().map_err(SchemeError::from_model)?;
    Layout::new(g, t, None)
}

pub fn chordal_prove(g: &Graph, tree: &CliqueTree) -> Result<Vec<ChordalCert>, SchemeError> {
    Ok(chordal_layout(g, tree)?.certs(g))
}

pub fn interval_prove(g: &Graph, tree: &CliqueTree) -> Result<Vec<IntervalCert>, SchemeError> {
    let layout = interval_layout(g, tree)?;
    let children = layout.tree.children();
    let mut child_label = vec![0; layout.tree.len()];
    for (b, ch) in children.iter().enumerate() {
        if let Some(&c) = ch.first() {
            child_label[b] = layout.label[c];
        }
    }
    let by_label: HashMap<u64, usize> = layout.label.iter().enumerate().map(|(b, &l)| (l, b)).collect();
    Ok(layout
        .certs(g)
        .into_iter()
        .map(|base| IntervalCert { base, child_label: child_label[by_label[&base.label]] })
        .collect())
}

/// Summary of one class as seen through the neighbours that belong to it.
struct ClassView {
    count: u64,
    size: u64,
    depth: u64,
    parent: u64,
    child: u64,
}

/// Checks shared by both schemes. `child` carries the interval scheme's child labels:
/// mine first, then one per neighbour in the order of `nbrs`.
fn check(my_id: u64, me: &ChordalCert, nbrs: &[(u64, &ChordalCert)], child: Option<(u64, &[u64])>) -> Verdict {
    let sizes = nbrs.iter().map(|(id, c)| (*id, &c.size));
    let v = size_check(my_id, &me.size, sizes);
    if !v.is_accept() {
        return v;
    }
    ensure!(me.size.tree.root == me.root_label, "size tree is not rooted at the root class");
    ensure!(
        nbrs.iter().all(|(_, c)| c.root_label == me.root_label && c.tree_size == me.tree_size),
        "neighbours disagree on the clique tree"
    );
    ensure!(me.tree_size <= me.size.claimed_n, "more bags than nodes");
    ensure!(me.depth < me.tree_size, "depth exceeds the tree size");
    ensure!((me.depth == 0) == (me.label == me.root_label), "only the root class has depth 0");
    if me.depth == 0 {
        ensure!(me.parent_label == me.label, "root class must be its own parent");
    } else {
        ensure!(me.parent_label != me.label, "class is its own parent");
    }

    let child_of = |i: usize| child.map_or(0, |(_, cs)| cs[i]);
    let my_child = child.map_or(0, |(c, _)| c);
    let mut classes: HashMap<u64, ClassView> = HashMap::new();
    for (i, (_, c)) in nbrs.iter().enumerate() {
        let e = classes.entry(c.label).or_insert(ClassView {
            count: 0,
            size: c.class_size,
            depth: c.depth,
            parent: c.parent_label,
            child: child_of(i),
        });
        ensure!(
            e.size == c.class_size && e.depth == c.depth && e.parent == c.parent_label && e.child == child_of(i),
            "members of a class disagree"
        );
        e.count += 1;
    }

    // My own class: a clique of the declared size around the node named by the label.
    let mates = classes.get(&me.label);
    if let Some(m) = mates {
        ensure!(
            m.size == me.class_size && m.depth == me.depth && m.parent == me.parent_label && m.child == my_child,
            "class mates disagree"
        );
    }
    ensure!(mates.map_or(0, |m| m.count) + 1 == me.class_size, "class size does not match my class mates");
    if me.label != my_id {
        ensure!(nbrs.iter().any(|(id, c)| *id == me.label && c.label == me.label), "label names no class mate");
    }
    ensure!(
        nbrs.iter().all(|(_, c)| c.depth != me.depth || c.label == me.label),
        "neighbour at my depth in another class"
    );

    // Walk up from every deeper neighbour's class to mine.
    let mut done: Vec<u64> = Vec::new();
    for (_, u) in nbrs.iter().filter(|(_, c)| c.depth > me.depth) {
        let mut x = u.label;
        loop {
            if done.contains(&x) {
                break;
            }
            let Some(cx) = classes.get(&x) else {
                return Verdict::reject("class on the path to the root is not adjacent");
            };
            ensure!(cx.count == cx.size, "not adjacent to a whole class on the path");
            done.push(x);
            let y = cx.parent;
            if cx.depth == me.depth + 1 {
                ensure!(y == me.label, "deeper neighbour's path misses my class");
                if child.is_some() {
                    ensure!(my_child == x, "path passes a class that is not my child");
                }
                break;
            }
            let Some(cy) = classes.get(&y) else {
                return Verdict::reject("class on the path to the root is not adjacent");
            };
            ensure!(cy.depth + 1 == cx.depth, "parent class is not one level up");
            if child.is_some() {
                ensure!(cy.child == x, "path passes a class that is not its parent's child");
            }
            x = y;
        }
    }

    if child.is_none() && me.depth > 0 {
        ensure!(
            classes.get(&me.parent_label).is_some_and(|p| p.depth + 1 == me.depth),
            "class shares no node with its parent class"
        );
    }

    match me.role {
        ROLE_NONE => ensure!(me.role_target == 0 && me.role_depth == 0, "payload without a role"),
        ROLE_EDGE_LEADER => {
            ensure!(me.role_depth == me.depth + 1, "edge leader vouches for a class at the wrong depth");
            let target = classes.get(&me.role_target);
            ensure!(
                target.is_some_and(|t| t.depth == me.role_depth && t.parent == me.label),
                "vouched class is not an adjacent child"
            );
            if child.is_some() {
                ensure!(my_child == me.role_target, "vouched class is not the unique child");
            }
        }
        ROLE_AUX => {
            ensure!(me.depth > 0, "root class has no auxiliary node");
            ensure!(me.role_target == me.label && me.role_depth == me.depth, "auxiliary payload mismatch");
            ensure!(
                nbrs.iter().all(|(_, c)| c.parent_label != me.label || c.label == me.label),
                "auxiliary node's class has a child"
            );
            ensure!(my_child == 0, "auxiliary node's class has a child");
        }
        _ => return Verdict::reject("unknown role"),
    }
    Verdict::Accept
}

pub fn chordal_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<ChordalCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    let nbrs: Vec<(u64, &ChordalCert)> = nbrs.iter().map(|(id, c)| (*id, c)).collect();
    check(view.id, &me, &nbrs, None)
}

pub fn interval_verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<IntervalCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    let base: Vec<(u64, &ChordalCert)> = nbrs.iter().map(|(id, c)| (*id, &c.base)).collect();
    let childs: Vec<u64> = nbrs.iter().map(|(_, c)| c.child_label).collect();
    check(view.id, &me.base, &base, Some((me.child_label, &childs)))
}

/// The trim partition: classes partition the nodes and for bags `b != b'` with
/// `depth(b) >= depth(b')`, `F_b ⊆ M_b \ M_b'`.
pub fn check_trim_partition(tree: &CliqueTree, classes: &[Vec<usize>], n: usize) -> Result<(), String> {
    let mut seen = vec![false; n];
    for c in classes {
        for &v in c {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(format!("node {v} is in two classes"));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(format!("node {v} is in no class"));
    }
    let depth = tree.depths();
    let has = |b: usize, v: usize| tree.bags[b].binary_search(&v).is_ok();
    for b in 0..tree.len() {
        if classes[b].is_empty() {
            return Err(format!("class of bag {b} is empty"));
        }
        for b2 in (0..tree.len()).filter(|&b2| b2 != b && depth[b] >= depth[b2]) {
            if let Some(&v) = classes[b].iter().find(|&&v| !has(b, v) || has(b2, v)) {
                return Err(format!("node {v} of class {b} violates the partition against bag {b2}"));
            }
        }
    }
    Ok(())
}

/// The five leader conditions: leaders lie in their bags, leaders of adjacent bags are
/// adjacent, leaders at different depths differ, every non-root leaf has an auxiliary
/// node adjacent to its leader, and no auxiliary node is a leader.
pub fn check_leaders(g: &Graph, tree: &CliqueTree, leaders: &Leaders) -> Result<(), String> {
    let depth = tree.depths();
    let children = tree.children();
    let k = tree.len();
    let l = &leaders.leader;
    for b in 0..k {
        if tree.bags[b].binary_search(&l[b]).is_err() {
            return Err(format!("leader of bag {b} is not in the bag"));
        }
        if let Some(p) = tree.parent[b] {
            if !g.has_edge(l[b], l[p]) {
                return Err(format!("leaders of bag {b} and its parent are not adjacent"));
            }
        }
        for b2 in b + 1..k {
            if depth[b] != depth[b2] && l[b] == l[b2] {
                return Err(format!("bags {b} and {b2} at different depths share a leader"));
            }
        }
        if tree.parent[b].is_some() && children[b].is_empty() {
            match leaders.aux[b] {
                Some(w) if g.has_edge(w, l[b]) => {}
                _ => return Err(format!("leaf bag {b} lacks an auxiliary node adjacent to its leader")),
            }
        }
    }
    if let Some(w) = leaders.aux.iter().flatten().find(|w| l.contains(w)) {
        return Err(format!("auxiliary node {w} is also a leader"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::clique_tree;
    use crate::runtime::toolbox::encode_all;
    use crate::runtime::{run_pls, Scheme};

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn triangle_is_one_class() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let certs = chordal_prove(&g, &clique_tree(&g).unwrap()).unwrap();
        assert!(certs.iter().all(|c| c.label == 1 && c.depth == 0 && c.class_size == 3));
        let enc = encode_all(Scheme::Chordal, &g, &certs);
        assert!(run_pls(Scheme::Chordal, &g, &enc, &chordal_verify).accepted());
    }

    #[test]
    fn p5_depths_follow_the_trim_partition() {
        let g = path(5);
        let t = CliqueTree::path(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        let certs = interval_prove(&g, &t).unwrap();
        let depths: Vec<u64> = certs.iter().map(|c| c.base.depth).collect();
        // Rooted at the first bag {0, 1}: node 2 tops bag 1, node 3 bag 2, node 4 bag 3.
        assert_eq!(depths, vec![0, 0, 1, 2, 3]);
        let enc = encode_all(Scheme::Interval, &g, &certs);
        assert!(run_pls(Scheme::Interval, &g, &enc, &interval_verify).accepted());
        let certs = chordal_prove(&g, &t).unwrap();
        let enc = encode_all(Scheme::Chordal, &g, &certs);
        assert!(run_pls(Scheme::Chordal, &g, &enc, &chordal_verify).accepted());

        // Hung from the second bag, the trim depths are 0, 0, 1, 1, 2.
        let mid = t.reroot(1);
        let classes = mid.trim_partition().unwrap();
        let bag_depth = mid.depths();
        let mut node_depth = vec![0; 5];
        for (b, c) in classes.iter().enumerate() {
            for &v in c {
                node_depth[v] = bag_depth[b];
            }
        }
        assert_eq!(node_depth, vec![1, 0, 0, 1, 2]);
        check_trim_partition(&mid, &classes, 5).unwrap();
    }

    #[test]
    fn star_like_tree_is_not_a_path() {
        // Subdivided claw: centre 0, arms 0-1-2, 0-3-4, 0-5-6.
        let g = Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let t = clique_tree(&g).unwrap();
        assert!(chordal_prove(&g, &t).is_ok());
        assert!(matches!(interval_prove(&g, &t), Err(SchemeError::InvalidWitness(_))));
    }

    #[test]
    fn cycle_cannot_borrow_path_certificates() {
        let p4 = path(4);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let certs = chordal_prove(&p4, &clique_tree(&p4).unwrap()).unwrap();
        let enc = encode_all(Scheme::Chordal, &c4, &certs);
        assert!(!run_pls(Scheme::Chordal, &c4, &enc, &chordal_verify).accepted());
    }

    #[test]
    fn lemma_checks_hold_on_normalized_trees() {
        for seed in 0..50 {
            let (g, m) = crate::models::random_model(Scheme::Chordal, 25, seed).unwrap();
            let crate::models::GeometricModel::CliqueTree(t) = m else { unreachable!() };
            let layout = chordal_layout(&g, &t).unwrap();
            check_trim_partition(&layout.tree, &layout.classes, g.n()).unwrap();
            let leaders = layout.tree.choose_leaders(&g).unwrap();
            check_leaders(&g, &layout.tree, &leaders).unwrap();
        }
    }
}

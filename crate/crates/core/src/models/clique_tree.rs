use serde::{Deserialize, Serialize};

use super::{invalid, ModelError};
use crate::Graph;

/// Maximal cliques arranged in a rooted tree where the bags containing any given node
/// form a subtree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTree {
    /// Sorted node indices of each bag.
    pub bags: Vec<Vec<usize>>,
    /// Parent bag, `None` for the root.
    pub parent: Vec<Option<usize>>,
}

/// Leader choice for a rooted clique tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaders {
    /// `leader[b]` lies in `b ∩ t(b)` but not in `t(t(b))`; the root gets any node of the root bag.
    pub leader: Vec<usize>,
    /// For each non-root leaf bag `l`, a node of `l` outside `t(l)`.
    pub aux: Vec<Option<usize>>,
}

impl CliqueTree {
    pub fn from_edges(bags: Vec<Vec<usize>>, edges: &[(usize, usize)], root: usize) -> Result<Self, ModelError> {
        let k = bags.len();
        if root >= k || edges.len() + 1 != k {
            return invalid("tree edges do not span the bags");
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            if a >= k || b >= k || a == b {
                return invalid(format!("bad tree edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(b) = stack.pop() {
            for &c in &adj[b] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(b);
                    stack.push(c);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return invalid("tree edges are disconnected");
        }
        let mut bags = bags;
        for b in &mut bags {
            b.sort_unstable();
        }
        Ok(CliqueTree { bags, parent })
    }

    /// A path of bags, rooted at the first.
    pub fn path(bags: Vec<Vec<usize>>) -> Self {
        let parent = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
        CliqueTree { bags, parent }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.bags.iter().flatten().max().map_or(0, |&v| v + 1)
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(Option::is_none).expect("tree has a root")
    }

    /// Tree edges as `(child, parent)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().enumerate().filter_map(|(c, p)| p.map(|p| (c, p))).collect()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (c, p) in self.edges() {
            ch[p].push(c);
        }
        ch
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.len()];
        fn resolve(t: &CliqueTree, b: usize, depth: &mut [usize]) -> usize {
            if depth[b] == usize::MAX {
                depth[b] = match t.parent[b] {
                    None => 0,
                    Some(p) => resolve(t, p, depth) + 1,
                };
            }
            depth[b]
        }
        for b in 0..self.len() {
            resolve(self, b, &mut depth);
        }
        depth
    }

    fn check_rooted_tree(&self) -> Result<(), ModelError> {
        if self.parent.len() != self.bags.len() || self.bags.is_empty() {
            return invalid("parent array does not match bags");
        }
        if self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return invalid("tree needs exactly one root");
        }
        for start in 0..self.len() {
            let mut b = start;
            for _ in 0..=self.len() {
                match self.parent[b] {
                    None => break,
                    Some(p) if p < self.len() => b = p,
                    Some(p) => return invalid(format!("parent {p} out of range")),
                }
            }
            if self.parent[b].is_some() {
                return invalid("parent pointers contain a cycle");
            }
        }
        Ok(())
    }

    /// Checks that this is a clique tree of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), ModelError> {
        self.check_rooted_tree()?;
        let n = g.n();
        let mut containing = vec![Vec::new(); n];
        for (b, bag) in self.bags.iter().enumerate() {
            if bag.is_empty() || bag.windows(2).any(|w| w[0] >= w[1]) || bag.iter().any(|&v| v >= n) {
                return invalid(format!("bag {b} is empty, unsorted or out of range"));
            }
            for (i, &u) in bag.iter().enumerate() {
                if bag[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                    return invalid(format!("bag {b} is not a clique"));
                }
                containing[u].push(b);
            }
            let extends = (0..n).any(|x| bag.binary_search(&x).is_err() && bag.iter().all(|&v| g.has_edge(x, v)));
            if extends {
                return invalid(format!("bag {b} is not a maximal clique"));
            }
        }
        let mut sorted = self.bags.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return invalid("repeated bag");
        }
        for (v, bags) in containing.iter().enumerate() {
            if bags.is_empty() {
                return invalid(format!("node {v} is in no bag"));
            }
            let linked = bags
                .iter()
                .filter(|&&b| self.parent[b].is_some_and(|p| self.bags[p].binary_search(&v).is_ok()))
                .count();
            if linked + 1 != bags.len() {
                return invalid(format!("bags containing node {v} are not connected"));
            }
        }
        for (u, v) in g.edges() {
            if !containing[u].iter().any(|b| containing[v].contains(b)) {
                return invalid(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        Ok(())
    }

    /// The same tree hung from bag `r`.
    pub fn reroot(&self, r: usize) -> CliqueTree {
        let mut parent = self.parent.clone();
        let mut prev = None;
        let mut b = Some(r);
        while let Some(x) = b {
            let next = parent[x];
            parent[x] = prev;
            prev = Some(x);
            b = next;
        }
        CliqueTree { bags: self.bags.clone(), parent }
    }

    /// For each node, the bag of least depth containing it.
    pub fn top_bags(&self) -> Vec<usize> {
        let depth = self.depths();
        let mut top = vec![usize::MAX; self.node_count()];
        for (b, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if top[v] == usize::MAX || depth[b] < depth[top[v]] {
                    top[v] = b;
                }
            }
        }
        top
    }

    /// Partition of the nodes by top bag. Fails if some bag tops no node.
    pub fn trim_partition(&self) -> Result<Vec<Vec<usize>>, ModelError> {
        let mut classes = vec![Vec::new(); self.len()];
        for (v, &b) in self.top_bags().iter().enumerate() {
            if b != usize::MAX {
                classes[b].push(v);
            }
        }
        match classes.iter().position(Vec::is_empty) {
            Some(b) => Err(ModelError::EmptyBagSet(b)),
            None => Ok(classes),
        }
    }

    fn contains(&self, b: usize, v: usize) -> bool {
        self.bags[b].binary_search(&v).is_ok()
    }

    /// Nodes of `b ∩ t(b)` outside `t(t(b))`, for a non-root bag `b`.
    pub fn leader_candidates(&self, b: usize) -> Vec<usize> {
        let Some(p) = self.parent[b] else { return Vec::new() };
        self.bags[b]
            .iter()
            .copied()
            .filter(|&v| self.contains(p, v) && !self.parent[p].is_some_and(|gp| self.contains(gp, v)))
            .collect()
    }

    /// Picks leaders and auxiliary nodes, preferring the smallest identifier.
    pub fn choose_leaders(&self, g: &Graph) -> Result<Leaders, ModelError> {
        let k = self.len();
        let root = self.root();
        let children = self.children();
        let by_id = |vs: &mut Vec<usize>| vs.sort_by_key(|&v| g.id(v));
        let mut cand: Vec<Vec<usize>> = (0..k).map(|b| self.leader_candidates(b)).collect();
        for (b, c) in cand.iter_mut().enumerate() {
            if b != root && c.is_empty() {
                return Err(ModelError::LeaderChoiceFailed(format!("bag {b} shares nothing new with its parent")));
            }
            by_id(c);
        }
        let mut root_options = self.bags[root].clone();
        by_id(&mut root_options);
        // The root leader and the leaders of the root's children all have the root as
        // top bag, so they must be different nodes.
        let root_leader = root_options
            .into_iter()
            .find(|&r| children[root].iter().all(|&c| cand[c].iter().any(|&x| x != r)))
            .ok_or_else(|| ModelError::LeaderChoiceFailed("root leader collides with a child".into()))?;
        let mut leader = vec![usize::MAX; k];
        leader[root] = root_leader;
        for b in 0..k {
            if b != root {
                let at_root = self.parent[b] == Some(root);
                leader[b] = *cand[b].iter().find(|&&x| !at_root || x != root_leader).unwrap();
            }
        }
        let mut aux = vec![None; k];
        for b in 0..k {
            if let (Some(p), true) = (self.parent[b], children[b].is_empty()) {
                let mut own: Vec<usize> = self.bags[b].iter().copied().filter(|&v| !self.contains(p, v)).collect();
                by_id(&mut own);
                aux[b] = Some(*own.first().ok_or_else(|| {
                    ModelError::LeaderChoiceFailed(format!("leaf bag {b} is contained in its parent"))
                })?);
            }
        }
        Ok(Leaders { leader, aux })
    }

    /// Re-hangs bags closer to the root while they share nothing new with their parent,
    /// trying other roots (leaves first) until leaders can be chosen.
    pub fn normalize(&self, g: &Graph) -> Result<CliqueTree, ModelError> {
        self.validate(g)?;
        let children = self.children();
        let mut roots = vec![self.root()];
        roots.extend(
            (0..self.len())
                .filter(|&b| b != self.root() && children[b].len() + usize::from(self.parent[b].is_some()) <= 1),
        );
        let rest: Vec<usize> = (0..self.len()).filter(|b| !roots.contains(b)).collect();
        roots.extend(rest);
        let mut last_err = None;
        for r in roots {
            let mut t = self.reroot(r);
            t.lift_shared_bags();
            match t.choose_leaders(g) {
                Ok(_) => return Ok(t),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| ModelError::LeaderChoiceFailed("no root works".into())))
    }

    /// While some bag `c` with grandparent `a` has `c ∩ t(c) ⊆ a`, hang `c` under `a`.
    fn lift_shared_bags(&mut self) {
        // Each move lowers the total depth, so at most |bags|^2 moves happen.
        let limit = self.len() * self.len() + 1;
        for _ in 0..limit {
            let moved = (0..self.len()).find_map(|c| {
                let p = self.parent[c]?;
                let a = self.parent[p]?;
                let shared_in_a = self.bags[c].iter().all(|&v| !self.contains(p, v) || self.contains(a, v));
                shared_in_a.then_some((c, a))
            });
            match moved {
                Some((c, a)) => self.parent[c] = Some(a),
                None => return,
            }
        }
        unreachable!("lifting bags must terminate");
    }

    pub fn is_path(&self) -> bool {
        let children = self.children();
        let root = self.root();
        (0..self.len()).all(|b| children[b].len() + usize::from(b != root) <= 2)
    }

    /// For a path-shaped tree, the same path rooted at one of its ends.
    pub fn as_rooted_path(&self) -> Result<CliqueTree, ModelError> {
        if !self.is_path() {
            return Err(ModelError::NotAPath);
        }
        let children = self.children();
        let end = (0..self.len())
            .find(|&b| children[b].len() + usize::from(self.parent[b].is_some()) <= 1)
            .expect("a path has an end");
        Ok(self.reroot(end))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw_path() -> (Graph, CliqueTree) {
        // a=0 joined to x=1, b=2, c=3.
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = CliqueTree::path(vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        (g, t)
    }

    #[test]
    fn validate_catches_broken_running_intersection() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let good = CliqueTree::path(vec![vec![0, 1], vec![1, 2]]);
        good.validate(&g).unwrap();
        let g4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bad = CliqueTree::path(vec![vec![0, 1], vec![2, 3], vec![1, 2]]);
        assert!(bad.validate(&g4).is_err());
        let not_max = CliqueTree::path(vec![vec![0], vec![0, 1], vec![1, 2]]);
        assert!(not_max.validate(&g).is_err());
    }

    #[test]
    fn trim_partition_by_top_bag() {
        let (_, t) = claw_path();
        assert_eq!(t.trim_partition().unwrap(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn normalize_lifts_bags_sharing_only_root_nodes() {
        let (g, t) = claw_path();
        assert!(t.choose_leaders(&g).is_err());
        let n = t.normalize(&g).unwrap();
        n.validate(&g).unwrap();
        let l = n.choose_leaders(&g).unwrap();
        assert_ne!(l.leader[n.root()], 0);
    }

    #[test]
    fn normalized_tree_is_left_alone() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let t = CliqueTree::path(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(t.normalize(&g).unwrap(), t);
        let l = t.choose_leaders(&g).unwrap();
        assert_eq!(l.leader, vec![0, 1]);
        assert_eq!(l.aux, vec![None, Some(2)]);
    }

    #[test]
    fn reroot_and_path_ends() {
        let (_, t) = claw_path();
        let r = t.reroot(1);
        assert_eq!(r.root(), 1);
        assert_eq!(r.depths(), vec![1, 0, 1]);
        assert!(!r.as_rooted_path().unwrap().parent[r.as_rooted_path().unwrap().root()].is_some());
        assert_eq!(r.as_rooted_path().unwrap().depths().iter().max(), Some(&2));
    }
}

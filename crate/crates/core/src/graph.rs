//! Simple undirected connected graphs with node identifiers.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default exponent `c` of the identifier range `[1, n^c]`.
pub const DEFAULT_ID_EXPONENT: u32 = 3;

/// Largest graph on which induced-cycle enumeration is attempted.
pub const INDUCED_CYCLE_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("node index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("identifier {0} used by more than one node")]
    IdCollision(u64),
    #[error("identifier {id} outside [1, {bound}]")]
    IdOutOfRange { id: u64, bound: u64 },
    #[error("expected {expected} identifiers, got {got}")]
    IdCount { expected: usize, got: usize },
    #[error("graph with {n} nodes exceeds the limit of {limit} for this operation")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingError {
    #[error("subgraphs overlap or are joined by an edge")]
    NotIndependent,
    #[error("mapping is not an isomorphism between the two subgraphs")]
    NotIsomorphism,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A connected simple graph on nodes `0..n` carrying distinct identifiers in `[1, n^c]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    ids: Vec<u64>,
    id_exponent: u32,
    #[serde(skip)]
    index: HashMap<u64, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    ids: Vec<u64>,
    id_exponent: u32,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        Graph::with_ids(raw.n, &raw.edges, raw.ids, raw.id_exponent)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n(), edges: g.edges(), ids: g.ids.clone(), id_exponent: g.id_exponent }
    }
}

/// `n^c`, saturating.
pub fn id_bound(n: usize, c: u32) -> u64 {
    (n as u64).saturating_pow(c).max(1)
}

impl Graph {
    /// Builds a graph with the default identifiers `i + 1`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::with_ids(n, edges, (1..=n as u64).collect(), DEFAULT_ID_EXPONENT)
    }

    pub fn with_ids(n: usize, edges: &[(usize, usize)], ids: Vec<u64>, id_exponent: u32) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if ids.len() != n {
            return Err(GraphError::IdCount { expected: n, got: ids.len() });
        }
        let bound = id_bound(n, id_exponent);
        let mut index = HashMap::with_capacity(n);
        for (v, &id) in ids.iter().enumerate() {
            if id == 0 || id > bound {
                return Err(GraphError::IdOutOfRange { id, bound });
            }
            if index.insert(id, v).is_some() {
                return Err(GraphError::IdCollision(id));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let g = Graph { adj, ids, id_exponent, index };
        if !g.is_connected() {
            return Err(GraphError::DisconnectedGraph);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn id_exponent(&self) -> u32 {
        self.id_exponent
    }

    /// Upper end of the identifier range, `n^c`.
    pub fn id_bound(&self) -> u64 {
        id_bound(self.n(), self.id_exponent)
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Same graph with new identifiers.
    pub fn relabel_ids(&self, ids: Vec<u64>) -> Result<Self, GraphError> {
        Self::with_ids(self.n(), &self.edges(), ids, self.id_exponent)
    }

    /// Same graph with identifiers drawn without repetition from `[1, n^c]`.
    pub fn with_random_ids<R: rand::Rng>(&self, rng: &mut R) -> Self {
        let bound = self.id_bound();
        let mut ids = Vec::with_capacity(self.n());
        let mut seen = std::collections::HashSet::new();
        while ids.len() < self.n() {
            let id = rng.gen_range(1..=bound);
            if seen.insert(id) {
                ids.push(id);
            }
        }
        self.relabel_ids(ids).expect("fresh identifiers are valid")
    }

    /// Graph induced by `nodes`, keeping identifiers. Fails if it is disconnected.
    pub fn induced(&self, nodes: &[usize]) -> Result<Self, GraphError> {
        let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = pos.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let ids = nodes.iter().map(|&v| self.ids[v]).collect();
        Self::with_ids(nodes.len(), &edges, ids, self.id_exponent)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_dist(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_dist(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `root` (the root is its own parent).
    pub fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n()];
        let mut dist = vec![0; self.n()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        (parent, dist)
    }

    /// A shortest path from `s` to `t`; shortest paths are induced.
    pub fn shortest_path(&self, s: usize, t: usize) -> Vec<usize> {
        let (parent, _) = self.bfs_tree(t);
        let mut path = vec![s];
        let mut v = s;
        while v != t {
            v = parent[v];
            path.push(v);
        }
        path
    }

    /// Whether the graph has an induced cycle on at least `k` nodes.
    pub fn has_induced_cycle_at_least(&self, k: usize) -> Result<bool, GraphError> {
        self.has_induced_cycle_at_least_within(k, INDUCED_CYCLE_MAX_N)
    }

    /// [`Self::has_induced_cycle_at_least`] with a caller-chosen size limit, for sparse
    /// graphs where the enumeration stays cheap beyond the default limit.
    pub fn has_induced_cycle_at_least_within(&self, k: usize, limit: usize) -> Result<bool, GraphError> {
        if self.n() > limit {
            return Err(GraphError::TooLarge { n: self.n(), limit });
        }
        Ok(self.longest_induced_cycle_capped(k) >= k.max(3))
    }

    /// Length of the longest induced cycle, or 0 for forests. Stops early once `cap` is reached.
    fn longest_induced_cycle_capped(&self, cap: usize) -> usize {
        let mut best = 0;
        let mut path = Vec::new();
        for s in 0..self.n() {
            path.clear();
            path.push(s);
            self.extend_chordless(s, &mut path, &mut best, cap);
            if best >= cap {
                break;
            }
        }
        best
    }

    fn extend_chordless(&self, s: usize, path: &mut Vec<usize>, best: &mut usize, cap: usize) {
        let last = *path.last().unwrap();
        for &x in &self.adj[last] {
            if x <= s || path.contains(&x) {
                continue;
            }
            // x may touch only `last`, plus `s` when it closes the cycle.
            let interior = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[][..] };
            if interior.iter().any(|&p| self.has_edge(p, x)) {
                continue;
            }
            if path.len() >= 2 && self.has_edge(s, x) {
                *best = (*best).max(path.len() + 1);
            } else if path.len() == 1 || !self.has_edge(s, x) {
                path.push(x);
                self.extend_chordless(s, path, best, cap);
                path.pop();
            }
            if *best >= cap {
                return;
            }
        }
    }

    /// Longest induced cycle length (0 for forests).
    pub fn longest_induced_cycle(&self) -> Result<usize, GraphError> {
        if self.n() > INDUCED_CYCLE_MAX_N {
            return Err(GraphError::TooLarge { n: self.n(), limit: INDUCED_CYCLE_MAX_N });
        }
        Ok(self.longest_induced_cycle_capped(usize::MAX))
    }

    /// Complement graph edges (may be disconnected, so returned as an edge list).
    pub fn complement_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// The graph `Q_k`: a path `v_1 .. v_{5k}` plus chords `{v_{5i-3}, v_{5i-1}}`.
/// Node `v_j` has index `j - 1`.
pub fn construct_q(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::Empty);
    }
    let n = 5 * k;
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    for i in 1..=k {
        edges.push((5 * i - 4, 5 * i - 2));
    }
    Graph::new(n, &edges)
}

/// The crossing operation: every edge `{u, v}` of the subgraph induced by the domain of
/// `sigma` is replaced, together with its image `{σu, σv}`, by `{u, σv}` and `{σu, v}`.
/// `sigma` lists pairs `(u, σu)`.
pub fn crossing(g: &Graph, sigma: &[(usize, usize)]) -> Result<Graph, CrossingError> {
    let n = g.n();
    let mut map = vec![None; n];
    let mut in_h2 = vec![false; n];
    for &(u, su) in sigma {
        if u >= n || su >= n {
            return Err(GraphError::IndexOutOfRange(u.max(su)).into());
        }
        if map[u].is_some() || in_h2[su] {
            return Err(CrossingError::NotIsomorphism);
        }
        map[u] = Some(su);
        in_h2[su] = true;
    }
    let h1: Vec<usize> = sigma.iter().map(|p| p.0).collect();
    let h2: Vec<usize> = sigma.iter().map(|p| p.1).collect();
    for &u in &h1 {
        if in_h2[u] || h2.iter().any(|&w| g.has_edge(u, w)) {
            return Err(CrossingError::NotIndependent);
        }
    }
    let mut replaced = Vec::new();
    for (i, &(u, su)) in sigma.iter().enumerate() {
        for &(v, sv) in &sigma[i + 1..] {
            if g.has_edge(u, v) != g.has_edge(su, sv) {
                return Err(CrossingError::NotIsomorphism);
            }
            if g.has_edge(u, v) {
                replaced.push((u, v, su, sv));
            }
        }
    }
    Ok(swap_edge_pairs(g, &replaced)?)
}

/// For each `(u, v, x, y)`: edges `{u, v}` and `{x, y}` become `{u, y}` and `{x, v}`, and
/// the other way round when the crossed pair is the one present. Applying the same pairs
/// twice gives back the original graph.
pub fn swap_edge_pairs(g: &Graph, pairs: &[(usize, usize, usize, usize)]) -> Result<Graph, GraphError> {
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut edges: std::collections::BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    for &(u, v, x, y) in pairs {
        let straight = [key(u, v), key(x, y)];
        let crossed = [key(u, y), key(x, v)];
        let (from, to) =
            if straight.iter().all(|e| edges.contains(e)) { (straight, crossed) } else { (crossed, straight) };
        if from.iter().all(|e| edges.remove(e)) {
            edges.extend(to);
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::with_ids(g.n(), &edges, g.ids().to_vec(), g.id_exponent())
}

/// Edge pairs a crossing would swap, for use with [`swap_edge_pairs`].
pub fn crossing_pairs(g: &Graph, sigma: &[(usize, usize)]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, &(u, su)) in sigma.iter().enumerate() {
        for &(v, sv) in &sigma[i + 1..] {
            if g.has_edge(u, v) {
                out.push((u, v, su, sv));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(Graph::new(2, &[]), Err(GraphError::DisconnectedGraph));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::with_ids(2, &[(0, 1)], vec![4, 4], 3), Err(GraphError::IdCollision(4)));
        assert!(Graph::new(1, &[]).is_ok());
    }

    #[test]
    fn q3_shape() {
        let q = construct_q(3).unwrap();
        assert_eq!(q.n(), 15);
        assert_eq!(q.m(), 14 + 3);
        assert!(q.has_edge(1, 3));
        assert!(q.has_edge(6, 8));
        assert!(q.has_edge(11, 13));
        assert!(!q.has_edge(2, 4));
    }

    #[test]
    fn crossing_q3_creates_induced_six_cycle() {
        let q = construct_q(3).unwrap();
        let sigma = [(2, 7), (3, 8)];
        let x = crossing(&q, &sigma).unwrap();
        // v7 v8 v4 v2 v3 v9 with nodes numbered from 1.
        let cyc = [6, 7, 3, 1, 2, 8];
        for i in 0..6 {
            assert!(x.has_edge(cyc[i], cyc[(i + 1) % 6]));
            for j in i + 2..6 {
                if (i, j) != (0, 5) {
                    assert!(!x.has_edge(cyc[i], cyc[j]), "chord {} {}", cyc[i], cyc[j]);
                }
            }
        }
        assert!(x.has_induced_cycle_at_least(5).unwrap());
        assert!(!q.has_induced_cycle_at_least(5).unwrap());
        let pairs = crossing_pairs(&q, &sigma);
        assert_eq!(swap_edge_pairs(&q, &pairs).unwrap(), x);
        assert_eq!(swap_edge_pairs(&x, &pairs).unwrap(), q);
    }

    #[test]
    fn crossing_two_rungs_of_a_ladder() {
        // 0-1-2 over 3-4-5 with rungs 0-3, 1-4, 2-5; swap the outer rungs.
        let g = Graph::new(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let x = crossing(&g, &[(0, 2), (3, 5)]).unwrap();
        assert_eq!(x.edges(), vec![(0, 1), (0, 5), (1, 2), (1, 4), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn crossing_errors() {
        let q = construct_q(3).unwrap();
        assert_eq!(crossing(&q, &[(2, 3), (3, 4)]).unwrap_err(), CrossingError::NotIndependent);
        assert_eq!(crossing(&q, &[(2, 7), (3, 4)]).unwrap_err(), CrossingError::NotIndependent);
        assert_eq!(crossing(&q, &[(2, 7), (3, 9)]).unwrap_err(), CrossingError::NotIsomorphism);
    }

    #[test]
    fn induced_cycles() {
        assert_eq!(cycle(7).longest_induced_cycle().unwrap(), 7);
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.longest_induced_cycle().unwrap(), 3);
        assert!(cycle(17).has_induced_cycle_at_least(5).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let g = cycle(5);
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.index_of(3), Some(2));
    }
}

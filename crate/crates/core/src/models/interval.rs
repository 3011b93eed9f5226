use serde::{Deserialize, Serialize};

use super::{check_represents, graph_from_predicate, invalid, ModelError};
use crate::graph::GraphError;
use crate::Graph;

/// Closed intervals `[left, right]`; the 2n endpoints are exactly `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalModel {
    pub intervals: Vec<(u64, u64)>,
}

impl IntervalModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.intervals.len();
        let mut seen = vec![false; 2 * n + 1];
        for (v, &(a, b)) in self.intervals.iter().enumerate() {
            if a >= b {
                return invalid(format!("interval {v} has left >= right"));
            }
            for x in [a, b] {
                if x == 0 || x as usize > 2 * n || std::mem::replace(&mut seen[x as usize], true) {
                    return invalid(format!("endpoint {x} repeated or outside [1, {}]", 2 * n));
                }
            }
        }
        Ok(())
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        let (a, b) = self.intervals[u];
        let (c, d) = self.intervals[v];
        a <= d && c <= b
    }

    pub fn is_proper(&self) -> bool {
        let iv = &self.intervals;
        (0..iv.len()).all(|u| (0..iv.len()).all(|v| u == v || !(iv[u].0 < iv[v].0 && iv[v].1 < iv[u].1)))
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        graph_from_predicate(self.intervals.len(), |u, v| self.intersects(u, v))
    }

    pub fn check_represents(&self, g: &Graph) -> Result<(), ModelError> {
        self.validate()?;
        check_represents(g, self.intervals.len(), |u, v| self.intersects(u, v))
    }

    /// Nodes sorted by left endpoint.
    pub fn left_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.intervals.len()).collect();
        order.sort_by_key(|&v| self.intervals[v].0);
        order
    }

    /// Maximal cliques in left-to-right order: the active set just before each right
    /// endpoint that directly follows a left endpoint.
    pub fn clique_path(&self) -> Vec<Vec<usize>> {
        let mut events: Vec<(u64, bool, usize)> = Vec::new();
        for (v, &(a, b)) in self.intervals.iter().enumerate() {
            events.push((a, true, v));
            events.push((b, false, v));
        }
        events.sort();
        let mut active: Vec<usize> = Vec::new();
        let mut cliques = Vec::new();
        let mut last_was_open = false;
        for (_, open, v) in events {
            if open {
                active.push(v);
            } else {
                if last_was_open {
                    let mut c = active.clone();
                    c.sort_unstable();
                    cliques.push(c);
                }
                active.retain(|&x| x != v);
            }
            last_was_open = open;
        }
        cliques
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_endpoints() {
        assert!(IntervalModel { intervals: vec![(1, 3), (2, 4)] }.validate().is_ok());
        assert!(IntervalModel { intervals: vec![(1, 3), (3, 4)] }.validate().is_err());
        assert!(IntervalModel { intervals: vec![(2, 1), (3, 4)] }.validate().is_err());
        assert!(IntervalModel { intervals: vec![(1, 5), (2, 4)] }.validate().is_err());
    }

    #[test]
    fn clique_path_of_a_claw_free_chain() {
        let m = IntervalModel { intervals: vec![(1, 3), (2, 5), (4, 6)] };
        assert!(m.is_proper());
        assert_eq!(m.clique_path(), vec![vec![0, 1], vec![1, 2]]);
        let g = m.to_graph().unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        let nested = IntervalModel { intervals: vec![(1, 6), (2, 3), (4, 5)] };
        assert!(!nested.is_proper());
        assert_eq!(nested.clique_path(), vec![vec![0, 1], vec![0, 2]]);
    }
}

use serde::{Deserialize, Serialize};

use super::{check_represents, graph_from_predicate, invalid, ModelError};
use crate::graph::GraphError;
use crate::Graph;

/// The arc running counter-clockwise from `left` to `right` on a circle of integer
/// positions `1..=circumference`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcModel {
    pub circumference: u64,
    pub arcs: Vec<Arc>,
}

impl ArcModel {
    /// Counter-clockwise distance from `from` to `to`.
    fn offset(&self, from: u64, to: u64) -> u64 {
        (to + self.circumference - from) % self.circumference
    }

    pub fn covers(&self, a: Arc, x: u64) -> bool {
        self.offset(a.left, x) <= self.offset(a.left, a.right)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let c = self.circumference;
        if c < 2 * self.arcs.len() as u64 {
            return invalid("circumference smaller than the number of endpoints");
        }
        let mut seen = std::collections::HashSet::new();
        for (v, a) in self.arcs.iter().enumerate() {
            for x in [a.left, a.right] {
                if x == 0 || x > c || !seen.insert(x) {
                    return invalid(format!("arc {v}: endpoint {x} repeated or outside [1, {c}]"));
                }
            }
        }
        Ok(())
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.arcs[u], self.arcs[v]);
        self.covers(a, b.left) || self.covers(b, a.left)
    }

    /// Whether arc `u` contains arc `v`.
    pub fn contains(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.arcs[u], self.arcs[v]);
        let (l, r) = (self.offset(a.left, b.left), self.offset(a.left, b.right));
        l <= r && r <= self.offset(a.left, a.right)
    }

    pub fn is_proper(&self) -> bool {
        let n = self.arcs.len();
        (0..n).all(|u| (0..n).all(|v| u == v || !self.contains(u, v)))
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        graph_from_predicate(self.arcs.len(), |u, v| self.intersects(u, v))
    }

    pub fn check_represents(&self, g: &Graph) -> Result<(), ModelError> {
        self.validate()?;
        check_represents(g, self.arcs.len(), |u, v| self.intersects(u, v))
    }

    /// Nodes by increasing `key`, read counter-clockwise starting at position 1.
    pub fn order_by(&self, key: impl Fn(&Arc) -> u64) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.arcs.len()).collect();
        order.sort_by_key(|&v| key(&self.arcs[v]));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping_arcs_intersect() {
        let m = ArcModel {
            circumference: 8,
            arcs: vec![Arc { left: 7, right: 2 }, Arc { left: 1, right: 4 }, Arc { left: 3, right: 6 }],
        };
        m.validate().unwrap();
        assert!(m.intersects(0, 1));
        assert!(m.intersects(1, 2));
        assert!(!m.intersects(0, 2));
        assert!(m.is_proper());
    }

    #[test]
    fn containment() {
        let m = ArcModel {
            circumference: 8,
            arcs: vec![Arc { left: 7, right: 4 }, Arc { left: 1, right: 2 }, Arc { left: 3, right: 6 }],
        };
        assert!(m.contains(0, 1));
        assert!(!m.contains(1, 0));
        assert!(!m.contains(0, 2));
        assert!(!m.is_proper());
    }
}

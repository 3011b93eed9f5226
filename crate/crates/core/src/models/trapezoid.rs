use serde::{Deserialize, Serialize};

use super::{check_represents, graph_from_predicate, invalid, ModelError};
use crate::graph::GraphError;
use crate::Graph;

/// Top interval `[t1, t2]` and bottom interval `[b1, b2]` between two parallel lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub t1: u64,
    pub t2: u64,
    pub b1: u64,
    pub b2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrapezoidKind {
    /// Each line carries every coordinate of `1..=2n` exactly once.
    Proper,
    /// Coordinates in `1..=2n` that may be shared.
    SemiProper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapezoidModel {
    pub kind: TrapezoidKind,
    pub traps: Vec<Trapezoid>,
}

pub fn trapezoids_intersect(a: &Trapezoid, b: &Trapezoid) -> bool {
    let a_left = a.t2 < b.t1 && a.b2 < b.b1;
    let b_left = b.t2 < a.t1 && b.b2 < a.b1;
    !(a_left || b_left)
}

impl TrapezoidModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.traps.len() as u64;
        let mut seen = [vec![false; 2 * n as usize + 1], vec![false; 2 * n as usize + 1]];
        for (v, t) in self.traps.iter().enumerate() {
            if t.t1 >= t.t2 || t.b1 >= t.b2 {
                return invalid(format!("trapezoid {v} has an empty side"));
            }
            if t.t1 == 0 || t.b1 == 0 || t.t2 > 2 * n || t.b2 > 2 * n {
                return invalid(format!("trapezoid {v} outside [1, {}]", 2 * n));
            }
            if self.kind == TrapezoidKind::Proper {
                for (line, x) in [(0, t.t1), (0, t.t2), (1, t.b1), (1, t.b2)] {
                    if std::mem::replace(&mut seen[line][x as usize], true) {
                        return invalid(format!("coordinate {x} repeated on one line"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every trapezoid has `t2 = t1 + 1` and `b2 = b1 + 1`.
    pub fn is_consecutive(&self) -> bool {
        self.traps.iter().all(|t| t.t2 == t.t1 + 1 && t.b2 == t.b1 + 1)
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        trapezoids_intersect(&self.traps[u], &self.traps[v])
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        graph_from_predicate(self.traps.len(), |u, v| self.intersects(u, v))
    }

    pub fn check_represents(&self, g: &Graph) -> Result<(), ModelError> {
        self.validate()?;
        check_represents(g, self.traps.len(), |u, v| self.intersects(u, v))
    }
}

/// Positions of each node on the bottom line (`l1`) and the top line (`l2`), both
/// permutations of `1..=n`. Two nodes are adjacent when their segments cross.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationModel {
    pub l1: Vec<u64>,
    pub l2: Vec<u64>,
}

impl PermutationModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.l1.len();
        if self.l2.len() != n {
            return invalid("lines have different lengths");
        }
        for line in [&self.l1, &self.l2] {
            let mut seen = vec![false; n + 1];
            for &x in line.iter() {
                if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true) {
                    return invalid(format!("position {x} repeated or outside [1, {n}]"));
                }
            }
        }
        Ok(())
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        (self.l1[u] < self.l1[v]) != (self.l2[u] < self.l2[v])
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        graph_from_predicate(self.l1.len(), |u, v| self.intersects(u, v))
    }

    pub fn check_represents(&self, g: &Graph) -> Result<(), ModelError> {
        self.validate()?;
        check_represents(g, self.l1.len(), |u, v| self.intersects(u, v))
    }

    /// The consecutive trapezoid model with `t = (2 l2 - 1, 2 l2)` and `b = (2 l1 - 1, 2 l1)`.
    pub fn to_consecutive_trapezoids(&self) -> TrapezoidModel {
        let traps = self
            .l1
            .iter()
            .zip(&self.l2)
            .map(|(&a, &b)| Trapezoid { t1: 2 * b - 1, t2: 2 * b, b1: 2 * a - 1, b2: 2 * a })
            .collect();
        TrapezoidModel { kind: TrapezoidKind::Proper, traps }
    }

    /// Inverse of [`Self::to_consecutive_trapezoids`].
    pub fn from_consecutive_trapezoids(m: &TrapezoidModel) -> Result<Self, ModelError> {
        if !m.is_consecutive() || m.traps.iter().any(|t| t.t1 % 2 == 0 || t.b1 % 2 == 0) {
            return invalid("trapezoids are not consecutive at odd coordinates");
        }
        let p = PermutationModel {
            l1: m.traps.iter().map(|t| t.b2 / 2).collect(),
            l2: m.traps.iter().map(|t| t.t2 / 2).collect(),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Permutation model of `Q_k` (node `v_j` has index `j - 1`).
pub fn q_permutation_model(k: usize) -> PermutationModel {
    let n = 5 * k;
    let v = |j: usize| j - 1;
    let mut top = Vec::with_capacity(n);
    let mut bottom = vec![v(1)];
    for i in 1..=k {
        top.extend([v(5 * i - 3), v(5 * i - 4), v(5 * i - 2), v(5 * i), v(5 * i - 1)]);
        bottom.extend([v(5 * i - 1), v(5 * i - 2), v(5 * i - 3)]);
        if i < k {
            bottom.push(v(5 * i + 1));
        }
        bottom.push(v(5 * i));
    }
    let mut l1 = vec![0; n];
    let mut l2 = vec![0; n];
    for (p, &x) in bottom.iter().enumerate() {
        l1[x] = p as u64 + 1;
    }
    for (p, &x) in top.iter().enumerate() {
        l2[x] = p as u64 + 1;
    }
    PermutationModel { l1, l2 }
}

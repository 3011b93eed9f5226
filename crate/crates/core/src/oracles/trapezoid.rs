use serde::{Deserialize, Serialize};

use crate::graph::{construct_q, crossing, INDUCED_CYCLE_MAX_N};
use crate::models::TrapezoidModel;
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureVerdict {
    Yes,
    No,
    Unknown,
}

/// The crossing of `Q_k` that swaps the middle edges of groups `i` and `j` (1-based).
pub fn crossed_q(k: usize, i: usize, j: usize) -> Option<Graph> {
    if !(1 <= i && i < j && j <= k) {
        return None;
    }
    let h = |g: usize| (5 * g - 3, 5 * g - 2);
    let (a, b) = h(i);
    let (c, d) = h(j);
    crossing(&construct_q(k).ok()?, &[(a, c), (b, d)]).ok()
}

/// Partial trapezoid membership: `Yes` with a model that represents `g`, `No` when `g`
/// has an induced cycle on five or more nodes or is one of the registered crossings of
/// `Q_k`, `Unknown` otherwise. Never claims more than it can justify.
pub fn trapezoid_membership_fixture(g: &Graph, model: Option<&TrapezoidModel>) -> FixtureVerdict {
    if model.is_some_and(|m| m.check_represents(g).is_ok()) {
        return FixtureVerdict::Yes;
    }
    if g.n() <= INDUCED_CYCLE_MAX_N && g.has_induced_cycle_at_least(5).unwrap_or(false) {
        return FixtureVerdict::No;
    }
    if g.n().is_multiple_of(5) {
        let k = g.n() / 5;
        let edges = g.edges();
        for i in 1..=k {
            for j in i + 1..=k {
                if crossed_q(k, i, j).is_some_and(|x| x.edges() == edges) {
                    return FixtureVerdict::No;
                }
            }
        }
    }
    FixtureVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::q_permutation_model;

    #[test]
    fn q_is_yes_and_its_crossings_are_no() {
        let q = construct_q(4).unwrap();
        let m = q_permutation_model(4).to_consecutive_trapezoids();
        assert_eq!(trapezoid_membership_fixture(&q, Some(&m)), FixtureVerdict::Yes);
        assert_eq!(trapezoid_membership_fixture(&q, None), FixtureVerdict::Unknown);
        let x = crossed_q(4, 1, 3).unwrap();
        assert_eq!(trapezoid_membership_fixture(&x, None), FixtureVerdict::No);
        assert_eq!(trapezoid_membership_fixture(&x, Some(&m)), FixtureVerdict::No);
    }
}

//! Exponential-time or textbook membership oracles, used as ground truth in tests.

mod arcs;
mod chordal;
mod comparability;
mod interval;
mod matrix;
mod permutation;
mod search;
mod trapezoid;

use thiserror::Error;

pub use arcs::{
    arc_model, brute_force_arc_graph, brute_force_proper_arc_graph, proper_arc_model, ARC_BRUTE_MAX_N,
    PROPER_ARC_BRUTE_MAX_N,
};
pub use chordal::{
    clique_tree, clique_tree_from_peo, is_chordal, is_perfect_elimination_order, maximum_cardinality_search,
};
pub use comparability::{is_comparability, is_comparability_edges, is_permutation_graph};
pub use interval::{
    has_asteroidal_triple, has_claw, interval_clique_path, is_interval, is_proper_interval, proper_interval_ordering,
    satisfies_umbrella,
};
pub use matrix::AugmentedAdjacency;
pub use permutation::permutation_model_search;
pub use search::{search_ordering, OrderingProperty};
pub use trapezoid::{crossed_q, trapezoid_membership_fixture, FixtureVerdict};

/// Largest graph the ordering searches accept.
pub const ORDERING_SEARCH_MAX_N: usize = 10;
/// Largest graph the permutation model search accepts.
pub const PERMUTATION_SEARCH_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph with {n} nodes exceeds the limit of {limit} for this oracle")]
    TooLarge { n: usize, limit: usize },
}

pub(crate) fn cap(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Calls `f` on every permutation of `items[start..]` (Heap's algorithm, in place).
/// Stops early when `f` returns `true`.
pub(crate) fn for_each_permutation(items: &mut [usize], start: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn heap(items: &mut [usize], start: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k <= 1 {
            return f(items);
        }
        for i in 0..k - 1 {
            if heap(items, start, k - 1, f) {
                return true;
            }
            let j = if k.is_multiple_of(2) { start + i } else { start };
            items.swap(j, start + k - 1);
        }
        heap(items, start, k - 1, f)
    }
    let k = items.len() - start;
    heap(items, start, k, f)
}

#[cfg(test)]
mod tests {
    use super::for_each_permutation;

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut items = vec![0, 1, 2, 3, 4];
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(&mut items, 1, &mut |p| {
            assert_eq!(p[0], 0);
            assert!(seen.insert(p.to_vec()));
            false
        });
        assert_eq!(seen.len(), 24);
    }
}

//! Exhaustive enumeration of small connected graphs.

use crate::Graph;

/// Largest node count the enumerators accept; 7 nodes already means 2^21 masks.
pub const ENUMERATE_MAX_N: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_of_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Option<Graph> {
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::new(n, &edges).ok()
}

/// Every connected labeled graph on `n` nodes, in increasing adjacency-mask order.
pub fn connected_labeled(n: usize) -> impl Iterator<Item = Graph> {
    assert!((1..=ENUMERATE_MAX_N).contains(&n), "n must be in 1..={ENUMERATE_MAX_N}");
    let pairs = pairs(n);
    (0u64..1 << pairs.len()).filter_map(move |mask| graph_of_mask(n, &pairs, mask))
}

/// Smallest adjacency mask over all relabelings; equal exactly for isomorphic graphs.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    let pairs = pairs(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mask = pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| g.has_edge(perm[u], perm[v]))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        best = best.min(mask);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative per isomorphism class of connected graphs on `n` nodes.
pub fn connected_unlabeled(n: usize) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    connected_labeled(n).filter(|g| seen.insert(canonical_mask(g))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequences() {
        // Connected labeled graphs: 1, 1, 4, 38, 728, 26704.
        let labeled: Vec<usize> = (1..=6).map(|n| connected_labeled(n).count()).collect();
        assert_eq!(labeled, [1, 1, 4, 38, 728, 26704]);
        // Connected unlabeled graphs: 1, 1, 2, 6, 21, 112.
        let unlabeled: Vec<usize> = (1..=6).map(|n| connected_unlabeled(n).len()).collect();
        assert_eq!(unlabeled, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_mask_ignores_labels() {
        let p = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let s = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_mask(&p), canonical_mask(&q));
        assert_ne!(canonical_mask(&p), canonical_mask(&s));
    }
}

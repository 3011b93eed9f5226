use crate::Graph;

/// Whether the graph on `0..n` with the given edges has a transitive orientation,
/// by backtracking over edge orientations.
pub fn is_comparability_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    // orient[u][v] = Some(true) means u -> v.
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut arc = vec![vec![false; n]; n];
    fn consistent(adj: &[Vec<bool>], arc: &[Vec<bool>], u: usize, v: usize) -> bool {
        // New arc u -> v: every a -> u needs a -> v, every v -> b needs u -> b.
        let n = adj.len();
        (0..n).all(|a| !arc[a][u] || (adj[a][v] && !arc[v][a]))
            && (0..n).all(|b| !arc[v][b] || (adj[u][b] && !arc[b][u]))
    }
    fn go(adj: &[Vec<bool>], arc: &mut Vec<Vec<bool>>, edges: &[(usize, usize)], i: usize) -> bool {
        let Some(&(u, v)) = edges.get(i) else { return true };
        for (a, b) in [(u, v), (v, u)] {
            if consistent(adj, arc, a, b) {
                arc[a][b] = true;
                if go(adj, arc, edges, i + 1) {
                    return true;
                }
                arc[a][b] = false;
            }
            if i == 0 {
                // The reverse of a transitive orientation is transitive.
                break;
            }
        }
        false
    }
    go(&adj, &mut arc, edges, 0)
}

pub fn is_comparability(g: &Graph) -> bool {
    is_comparability_edges(g.n(), &g.edges())
}

/// A graph is a permutation graph exactly when it and its complement are comparability graphs.
pub fn is_permutation_graph(g: &Graph) -> bool {
    is_comparability(g) && is_comparability_edges(g.n(), &g.complement_edges())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycles_are_not_comparability() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(!is_comparability(&c5));
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_comparability(&c4));
        assert!(is_permutation_graph(&c4));
    }
}

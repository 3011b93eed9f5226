use super::{cap, chordal, OracleError, ORDERING_SEARCH_MAX_N};
use crate::models::{CliqueTree, Ordering};
use crate::Graph;

/// Component label of every node in `G - N[x]` (`usize::MAX` on `N[x]`).
fn components_avoiding(g: &Graph, x: usize) -> Vec<usize> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let blocked = |v: usize| v == x || g.has_edge(x, v);
    let mut next = 0;
    for s in 0..n {
        if blocked(s) || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !blocked(w) && label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Three pairwise non-adjacent nodes, each pair joined by a path avoiding the third's
/// closed neighbourhood.
pub fn has_asteroidal_triple(g: &Graph) -> bool {
    let n = g.n();
    let comp: Vec<Vec<usize>> = (0..n).map(|x| components_avoiding(g, x)).collect();
    let linked = |a: usize, b: usize, avoid: usize| comp[avoid][a] != usize::MAX && comp[avoid][a] == comp[avoid][b];
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.has_edge(a, c) && !g.has_edge(b, c) && linked(b, c, a) && linked(a, c, b) && linked(a, b, c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether some node has three pairwise non-adjacent neighbours.
pub fn has_claw(g: &Graph) -> bool {
    (0..g.n()).any(|v| {
        let nb = g.neighbors(v);
        nb.iter().enumerate().any(|(i, &a)| {
            nb[i + 1..].iter().enumerate().any(|(j, &b)| {
                !g.has_edge(a, b) && nb[i + 1 + j + 1..].iter().any(|&c| !g.has_edge(a, c) && !g.has_edge(b, c))
            })
        })
    })
}

/// Chordal and free of asteroidal triples.
pub fn is_interval(g: &Graph) -> bool {
    chordal::is_chordal(g).is_some() && !has_asteroidal_triple(g)
}

/// For positions `i < k < j`, an edge `v_i v_j` forces edges `v_i v_k` and `v_k v_j`.
pub fn satisfies_umbrella(g: &Graph, order: &[usize]) -> bool {
    let n = order.len();
    (0..n).all(|j| (0..j).all(|i| !g.has_edge(order[i], order[j]) || umbrella_holds(g, order, i, j)))
}

fn umbrella_holds(g: &Graph, order: &[usize], i: usize, j: usize) -> bool {
    (i + 1..j).all(|k| g.has_edge(order[i], order[k]) && g.has_edge(order[k], order[j]))
}

/// Brute-force search for an ordering with the umbrella property.
pub fn proper_interval_ordering(g: &Graph) -> Result<Option<Ordering>, OracleError> {
    cap(g.n(), ORDERING_SEARCH_MAX_N)?;
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(g: &Graph, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if order.len() == g.n() {
            return true;
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            order.push(v);
            let j = order.len() - 1;
            let ok = (0..j).all(|i| !g.has_edge(order[i], v) || umbrella_holds(g, order, i, j));
            if ok {
                used[v] = true;
                if extend(g, order, used) {
                    return true;
                }
                used[v] = false;
            }
            order.pop();
        }
        false
    }
    Ok(extend(g, &mut order, &mut used).then_some(Ordering { order }))
}

/// Exact search up to the ordering cap, then interval and claw-free.
pub fn is_proper_interval(g: &Graph) -> bool {
    match proper_interval_ordering(g) {
        Ok(found) => found.is_some(),
        Err(_) => is_interval(g) && !has_claw(g),
    }
}

/// A clique path (maximal cliques ordered so each node's cliques are consecutive),
/// by backtracking over clique orders.
pub fn interval_clique_path(g: &Graph) -> Result<Option<CliqueTree>, OracleError> {
    cap(g.n(), ORDERING_SEARCH_MAX_N)?;
    let Some(tree) = chordal::clique_tree(g) else { return Ok(None) };
    let bags = tree.bags;
    let k = bags.len();
    // state per node: 0 unseen, 1 in the current run, 2 run closed
    fn extend(bags: &[Vec<usize>], order: &mut Vec<usize>, used: &mut [bool], state: &mut Vec<u8>) -> bool {
        if order.len() == bags.len() {
            return true;
        }
        for b in 0..bags.len() {
            if used[b] || bags[b].iter().any(|&v| state[v] == 2) {
                continue;
            }
            let saved = state.clone();
            for s in state.iter_mut().filter(|s| **s == 1) {
                *s = 2;
            }
            for &v in &bags[b] {
                state[v] = 1;
            }
            used[b] = true;
            order.push(b);
            if extend(bags, order, used, state) {
                return true;
            }
            order.pop();
            used[b] = false;
            *state = saved;
        }
        false
    }
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut state = vec![0u8; g.n()];
    if !extend(&bags, &mut order, &mut used, &mut state) {
        return Ok(None);
    }
    Ok(Some(CliqueTree::path(order.iter().map(|&b| bags[b].clone()).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn claw_is_interval_but_not_proper() {
        let claw = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(is_interval(&claw));
        assert!(has_claw(&claw));
        assert!(!is_proper_interval(&claw));
        assert!(proper_interval_ordering(&claw).unwrap().is_none());
    }

    #[test]
    fn subdivided_claw_has_asteroidal_triple() {
        let t = graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert!(has_asteroidal_triple(&t));
        assert!(!is_interval(&t));
        assert!(interval_clique_path(&t).unwrap().is_none());
    }

    #[test]
    fn path_orderings() {
        let p = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let o = proper_interval_ordering(&p).unwrap().unwrap();
        assert!(satisfies_umbrella(&p, &o.order));
        assert!(!satisfies_umbrella(&p, &[0, 2, 1, 3]));
        let path = interval_clique_path(&p).unwrap().unwrap();
        path.validate(&p).unwrap();
        assert!(path.is_path());
    }
}

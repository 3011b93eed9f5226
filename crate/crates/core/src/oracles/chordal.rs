use crate::models::CliqueTree;
use crate::Graph;

/// Visit order of maximum cardinality search started at node 0.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).unwrap();
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    order
}

/// Whether the later neighbours of every node in `order` form a clique.
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        // Checking against the earliest later neighbour suffices.
        match later.iter().min_by_key(|&&w| pos[w]) {
            None => true,
            Some(&p) => later.iter().all(|&w| w == p || g.has_edge(p, w)),
        }
    })
}

/// A perfect elimination order, if the graph is chordal.
pub fn is_chordal(g: &Graph) -> Option<Vec<usize>> {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    is_perfect_elimination_order(g, &order).then_some(order)
}

/// Clique tree from a perfect elimination order. The maximal cliques are the sets
/// `{v} ∪ later(v)` not contained in another such set.
pub fn clique_tree_from_peo(g: &Graph, peo: &[usize]) -> CliqueTree {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let later: Vec<Vec<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect()).collect();
    let clique = |v: usize| {
        let mut c = later[v].clone();
        c.push(v);
        c.sort_unstable();
        c
    };
    // C(v) = {v} ∪ later(v) can only sit inside C(u) for an earlier neighbour u.
    let mut absorbed_by = vec![None; n];
    for v in 0..n {
        let cv = clique(v);
        absorbed_by[v] = g.neighbors(v).iter().copied().find(|&u| {
            pos[u] < pos[v] && later[u].len() >= cv.len() && cv.iter().all(|&x| x == u || later[u].contains(&x))
        });
    }
    let bags: Vec<Vec<usize>> = peo.iter().filter(|&&v| absorbed_by[v].is_none()).map(|&v| clique(v)).collect();
    max_weight_tree(bags)
}

/// Maximum-weight spanning tree of the clique intersection graph (weight `|B ∩ C|`),
/// rooted at bag 0. For the maximal cliques of a chordal graph these are exactly the
/// clique trees.
fn max_weight_tree(bags: Vec<Vec<usize>>) -> CliqueTree {
    let k = bags.len();
    let overlap = |a: &[usize], b: &[usize]| {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    };
    let mut parent = vec![None; k];
    let mut in_tree = vec![false; k];
    let mut best = vec![(0usize, 0usize); k];
    let add = |b: usize, in_tree: &mut Vec<bool>, best: &mut Vec<(usize, usize)>| {
        in_tree[b] = true;
        for c in 0..k {
            let w = overlap(&bags[b], &bags[c]);
            if !in_tree[c] && w > best[c].0 {
                best[c] = (w, b);
            }
        }
    };
    add(0, &mut in_tree, &mut best);
    for _ in 1..k {
        let b = (0..k).filter(|&c| !in_tree[c]).max_by_key(|&c| (best[c].0, std::cmp::Reverse(c))).unwrap();
        parent[b] = Some(best[b].1);
        add(b, &mut in_tree, &mut best);
    }
    CliqueTree { bags, parent }
}

/// Clique tree of a chordal graph.
pub fn clique_tree(g: &Graph) -> Option<CliqueTree> {
    is_chordal(g).map(|peo| clique_tree_from_peo(g, &peo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::random_model;
    use crate::runtime::Scheme;

    #[test]
    fn cycles_are_not_chordal() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_chordal(&c4).is_none());
        let diamond = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert!(is_chordal(&diamond).is_some());
    }

    #[test]
    fn clique_trees_of_random_chordal_graphs_are_valid() {
        for seed in 0..200 {
            let (g, _) = random_model(Scheme::Chordal, 1 + seed as usize % 25, seed).unwrap();
            let t = clique_tree(&g).expect("generated graph is chordal");
            t.validate(&g).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }
}

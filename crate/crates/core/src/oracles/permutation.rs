use super::{cap, for_each_permutation, OracleError, PERMUTATION_SEARCH_MAX_N};
use crate::models::PermutationModel;
use crate::Graph;

/// Tries every bottom-line order; each forces the top-line order pairwise (adjacent pairs
/// swap, others keep their order), which must be a transitive tournament.
pub fn permutation_model_search(g: &Graph) -> Result<Option<PermutationModel>, OracleError> {
    let n = g.n();
    cap(n, PERMUTATION_SEARCH_MAX_N)?;
    let mut items: Vec<usize> = (0..n).collect();
    let mut found = None;
    let mut score = vec![0usize; n];
    for_each_permutation(&mut items, 0, &mut |bottom| {
        // score[v] = number of nodes forced before v on the top line.
        score.iter_mut().for_each(|s| *s = 0);
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (bottom[i], bottom[j]);
                if g.has_edge(a, b) {
                    score[a] += 1;
                } else {
                    score[b] += 1;
                }
            }
        }
        let mut seen = vec![false; n];
        if score.iter().all(|&s| !std::mem::replace(&mut seen[s], true)) {
            let mut l1 = vec![0u64; n];
            for (p, &v) in bottom.iter().enumerate() {
                l1[v] = p as u64 + 1;
            }
            let l2 = score.iter().map(|&s| s as u64 + 1).collect();
            found = Some(PermutationModel { l1, l2 });
            true
        } else {
            false
        }
    });
    Ok(found)
}

use super::{cap, for_each_permutation, OracleError};
use crate::models::{Arc, ArcModel};
use crate::Graph;

/// Largest graph the proper-arc enumeration accepts.
pub const PROPER_ARC_BRUTE_MAX_N: usize = 6;
/// Largest graph the general arc enumeration accepts.
pub const ARC_BRUTE_MAX_N: usize = 5;

fn represents(m: &ArcModel, g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| m.intersects(u, v) == g.has_edge(u, v)))
}

/// Enumerates proper arc models: left endpoints in a cyclic node order, right endpoints in
/// the same cyclic order starting at some offset, interleaved by every word of n `L`s and n `R`s.
pub fn brute_force_proper_arc_graph(g: &Graph) -> Result<bool, OracleError> {
    Ok(proper_arc_model(g)?.is_some())
}

/// The first proper arc model found by the enumeration behind [`brute_force_proper_arc_graph`].
pub fn proper_arc_model(g: &Graph) -> Result<Option<ArcModel>, OracleError> {
    let n = g.n();
    cap(n, PROPER_ARC_BRUTE_MAX_N)?;
    let mut nodes: Vec<usize> = (0..n).collect();
    let mut found = None;
    for_each_permutation(&mut nodes, 1, &mut |order| {
        // Words start with L; the mask marks R positions among the remaining 2n - 1 slots.
        for mask in 0u32..(1 << (2 * n - 1)) {
            if mask.count_ones() as usize != n {
                continue;
            }
            for offset in 0..n {
                let mut arcs = vec![Arc { left: 0, right: 0 }; n];
                let (mut li, mut ri) = (0, 0);
                for pos in 0..2 * n {
                    let is_right = pos > 0 && mask >> (pos - 1) & 1 == 1;
                    if is_right {
                        arcs[order[(ri + offset) % n]].right = pos as u64 + 1;
                        ri += 1;
                    } else {
                        arcs[order[li]].left = pos as u64 + 1;
                        li += 1;
                    }
                }
                let m = ArcModel { circumference: 2 * n as u64, arcs };
                if m.is_proper() && represents(&m, g) {
                    found = Some(m);
                    return true;
                }
            }
        }
        false
    });
    Ok(found)
}

/// Enumerates every circular arrangement of the 2n endpoints.
pub fn brute_force_arc_graph(g: &Graph) -> Result<bool, OracleError> {
    Ok(arc_model(g)?.is_some())
}

/// The first arc model found by the enumeration behind [`brute_force_arc_graph`].
pub fn arc_model(g: &Graph) -> Result<Option<ArcModel>, OracleError> {
    let n = g.n();
    cap(n, ARC_BRUTE_MAX_N)?;
    // Event 2v is the left end of v, 2v + 1 its right end.
    let mut events: Vec<usize> = (0..2 * n).collect();
    let mut found = None;
    for_each_permutation(&mut events, 1, &mut |seq| {
        let mut arcs = vec![Arc { left: 0, right: 0 }; n];
        for (pos, &e) in seq.iter().enumerate() {
            let p = pos as u64 + 1;
            if e % 2 == 0 {
                arcs[e / 2].left = p;
            } else {
                arcs[e / 2].right = p;
            }
        }
        let m = ArcModel { circumference: 2 * n as u64, arcs };
        if represents(&m, g) {
            found = Some(m);
        }
        found.is_some()
    });
    Ok(found)
}

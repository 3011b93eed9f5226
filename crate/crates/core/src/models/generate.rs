use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    Arc, ArcModel, CliqueTree, GeometricModel, IntervalModel, ModelError, PermutationModel, Trapezoid, TrapezoidKind,
    TrapezoidModel,
};
use crate::runtime::Scheme;
use crate::Graph;

/// Attempts per seed before giving up on drawing a connected sample.
pub const MAX_RESAMPLES: usize = 1000;

/// A random connected member of `class` on `n` nodes with its model, deterministic in `seed`.
pub fn random_model(class: Scheme, n: usize, seed: u64) -> Result<(Graph, GeometricModel), ModelError> {
    if n == 0 {
        return Err(crate::GraphError::Empty.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (class as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..MAX_RESAMPLES {
        let model = match class {
            Scheme::Interval => GeometricModel::Interval(sweep_intervals(n, false, &mut rng)),
            Scheme::ProperInterval => GeometricModel::Interval(sweep_intervals(n, true, &mut rng)),
            Scheme::Chordal => {
                let (g, t) = grow_chordal(n, &mut rng);
                return Ok((g, GeometricModel::CliqueTree(t)));
            }
            Scheme::CircularArc => GeometricModel::Arc(random_arcs(n, false, &mut rng)),
            Scheme::ProperCircularArc => GeometricModel::Arc(random_arcs(n, true, &mut rng)),
            Scheme::Trapezoid => GeometricModel::Trapezoid(random_trapezoids(n, &mut rng)),
            Scheme::Permutation => GeometricModel::Permutation(random_permutation(n, &mut rng)),
            other => return Err(ModelError::Unsupported(other.tag().into())),
        };
        match model.to_graph().expect("geometric model") {
            Ok(g) => return Ok((g, model)),
            Err(crate::GraphError::DisconnectedGraph) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ModelError::SeedExhausted(MAX_RESAMPLES))
}

/// Sweeps positions `1..=2n`, opening or closing one interval per step. No interval
/// closes while it is the only open one and intervals remain, so the graph is connected.
/// Closing the oldest open interval gives a proper model.
fn sweep_intervals<R: Rng>(n: usize, proper: bool, rng: &mut R) -> IntervalModel {
    let mut intervals = vec![(0u64, 0u64); n];
    let mut open: Vec<usize> = Vec::new();
    let mut next = 0;
    let p_open = rng.gen_range(0.35..0.65);
    for pos in 1..=2 * n as u64 {
        let must_open = open.is_empty() || (open.len() == 1 && next < n);
        let can_open = next < n;
        if can_open && (must_open || rng.gen_bool(p_open)) {
            intervals[next].0 = pos;
            open.push(next);
            next += 1;
        } else {
            let i = if proper { 0 } else { rng.gen_range(0..open.len()) };
            let v = open.remove(i);
            intervals[v].1 = pos;
        }
    }
    IntervalModel { intervals }
}

/// Adds nodes one at a time, each adjacent to a random non-empty subset of a random bag.
fn grow_chordal<R: Rng>(n: usize, rng: &mut R) -> (Graph, CliqueTree) {
    let mut bags: Vec<Vec<usize>> = vec![vec![0]];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut edges = Vec::new();
    for v in 1..n {
        let b = rng.gen_range(0..bags.len());
        let mut subset: Vec<usize> = bags[b].iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if subset.is_empty() {
            subset.push(*bags[b].choose(rng).unwrap());
        }
        edges.extend(subset.iter().map(|&u| (u, v)));
        if subset.len() == bags[b].len() {
            bags[b].push(v);
        } else {
            subset.push(v);
            bags.push(subset);
            parent.push(Some(b));
        }
    }
    let g = Graph::new(n, &edges).expect("each new node attaches to an existing one");
    (g, CliqueTree { bags, parent })
}

/// Ranks real endpoints on the unit circle to integer positions `1..=2n`.
fn random_arcs<R: Rng>(n: usize, proper: bool, rng: &mut R) -> ArcModel {
    let common = ((2.5 / n as f64).max(0.05) * rng.gen_range(0.8..1.6)).min(0.45);
    let mut points: Vec<(f64, usize, bool)> = Vec::with_capacity(2 * n);
    for v in 0..n {
        let start: f64 = rng.gen();
        let len = if proper { common } else { rng.gen_range(0.02..0.6f64) };
        points.push((start, v, true));
        points.push(((start + len).fract(), v, false));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut arcs = vec![Arc { left: 0, right: 0 }; n];
    for (i, &(_, v, is_left)) in points.iter().enumerate() {
        let pos = i as u64 + 1;
        if is_left {
            arcs[v].left = pos;
        } else {
            arcs[v].right = pos;
        }
    }
    ArcModel { circumference: 2 * n as u64, arcs }
}

/// Independent random interval sweeps on the two lines; the top sweep alone is connected.
fn random_trapezoids<R: Rng>(n: usize, rng: &mut R) -> TrapezoidModel {
    let top = sweep_intervals(n, false, rng);
    let bottom = sweep_intervals(n, false, rng);
    let mut pairing: Vec<usize> = (0..n).collect();
    pairing.shuffle(rng);
    let traps = (0..n)
        .map(|v| {
            let (t1, t2) = top.intervals[v];
            let (b1, b2) = bottom.intervals[pairing[v]];
            Trapezoid { t1, t2, b1, b2 }
        })
        .collect();
    TrapezoidModel { kind: TrapezoidKind::Proper, traps }
}

fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> PermutationModel {
    let mut l1: Vec<u64> = (1..=n as u64).collect();
    let mut l2 = l1.clone();
    l1.shuffle(rng);
    l2.shuffle(rng);
    PermutationModel { l1, l2 }
}

//! Experiment campaigns: completeness sweeps, soundness fuzzing, proof sizes, the
//! exhaustive small-graph checks and determinism checks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::{connected_labeled, connected_unlabeled};
use crate::graph::id_bound;
use crate::models::{random_model, CliqueTree, GeometricModel, Ordering};
use crate::oracles::{self, for_each_permutation, FixtureVerdict, OrderingProperty};
use crate::runtime::corrupt::{corrupt, sample_in_domain, Corruption};
use crate::runtime::{run_pls_with, Certificate, Dims, RunOptions, Scheme};
use crate::schemes::{self, chordal, circular, proper_interval, trapezoid};
use crate::Graph;

/// Seed of iteration `i` of a campaign seeded with `seed` (splitmix64 of the pair).
pub fn iteration_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn run(scheme: Scheme, g: &Graph, certs: &[Certificate], seed: u64) -> crate::RunReport {
    let verify = schemes::verifier(scheme).expect("class schemes have verifiers");
    run_pls_with(scheme, g, certs, &verify, RunOptions { seed, shuffle_neighbors: true })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessFailure {
    pub n: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub scheme: Scheme,
    pub instances: usize,
    pub accepted: usize,
    pub failures: Vec<CompletenessFailure>,
}

/// Honest prove-then-verify on generated yes-instances, with `n` cycling through `ns`.
pub fn completeness(scheme: Scheme, instances: usize, ns: RangeInclusive<usize>, seed: u64) -> CompletenessReport {
    let span = ns.end() - ns.start() + 1;
    let mut failures = Vec::new();
    for i in 0..instances {
        let n = ns.start() + i % span;
        let s = iteration_seed(seed, i as u64);
        let outcome = random_model(scheme, n, s)
            .map_err(|e| e.to_string())
            .and_then(|(g, m)| schemes::prove(scheme, &g, &m).map(|c| (g, c)).map_err(|e| e.to_string()))
            .and_then(|(g, certs)| {
                let r = run(scheme, &g, &certs, s);
                if r.accepted() {
                    Ok(())
                } else {
                    Err(format!("rejected at {:?}: {:?}", r.rejecting_ids, r.reasons.first()))
                }
            });
        if let Err(error) = outcome {
            failures.push(CompletenessFailure { n, seed: s, error });
        }
    }
    CompletenessReport { scheme, instances, accepted: instances - failures.len(), failures }
}

/// How one fuzz iteration builds its certificate assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Every field of every node drawn from its domain.
    Uniform,
    /// Honest certificates of a yes-instance on the same number of nodes, dealt to the
    /// nodes in a random order.
    Shadow,
    /// Honest certificates of a yes-instance in place, then one to three corruptions.
    Corrupt(Corruption),
}

impl Strategy {
    pub fn tag(self) -> String {
        match self {
            Strategy::Uniform => "uniform".into(),
            Strategy::Shadow => "shadow".into(),
            Strategy::Corrupt(c) => c.tag().into(),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" => Ok(Strategy::Uniform),
            "shadow" => Ok(Strategy::Shadow),
            _ => s.parse().map(Strategy::Corrupt).map_err(|_| format!("unknown strategy `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub scheme: Scheme,
    pub iters: u64,
    pub seed: u64,
    /// Strategies with integer weights.
    pub mix: Vec<(Strategy, u32)>,
}

impl FuzzConfig {
    pub fn new(scheme: Scheme, iters: u64, seed: u64) -> Self {
        let mut mix = vec![(Strategy::Uniform, 2), (Strategy::Shadow, 1)];
        mix.extend(Corruption::ALL.map(|c| (Strategy::Corrupt(c), 2)));
        FuzzConfig { scheme, iters, seed, mix }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub iteration: u64,
    pub seed: u64,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub fixture: String,
    pub scheme: Scheme,
    pub n: usize,
    pub iterations: u64,
    /// Donor yes-instances available to the shadow and corruption strategies.
    pub donors: usize,
    pub per_strategy: Vec<(String, u64)>,
    pub accepts: usize,
    pub findings: Vec<Finding>,
}

/// Honest certificate sets on `n`-node yes-instances whose certificates have the same
/// layout as `g`'s: `g` minus one edge where the oracles can certify it, the given
/// near-miss instances, and generated models.
pub fn donors(scheme: Scheme, g: &Graph, near: &[(Graph, GeometricModel)], generated: u64) -> Vec<Vec<Certificate>> {
    let n = g.n();
    let dims = Dims::of(g);
    let mut out = Vec::new();
    for (h, m) in near {
        if let Ok(c) = schemes::prove(scheme, h, m) {
            out.push(c);
        }
    }
    if n <= oracles::PERMUTATION_SEARCH_MAX_N {
        for (u, v) in g.edges() {
            let rest: Vec<_> = g.edges().into_iter().filter(|&e| e != (u, v)).collect();
            if let Ok(h) = Graph::with_ids(n, &rest, g.ids().to_vec(), g.id_exponent()) {
                if let Ok(c) = schemes::certify(scheme, &h) {
                    out.push(c);
                }
            }
        }
    }
    for s in 0..generated {
        if let Ok((h, m)) = random_model(scheme, n, s) {
            if let (Ok(h), true) = (h.relabel_ids(g.ids().to_vec()), Dims::of(&h) == dims) {
                if let Ok(c) = schemes::prove(scheme, &h, &m) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Registered fixtures with a model and the same node count as `g`.
pub fn near_instances(registry: &crate::fixtures::Registry, g: &Graph) -> Vec<(Graph, GeometricModel)> {
    registry
        .entries()
        .iter()
        .filter(|e| e.graph.n() == g.n())
        .filter_map(|e| Some((e.graph.clone(), e.model.clone()?)))
        .collect()
}

fn pick_strategy<R: Rng>(mix: &[(Strategy, u32)], rng: &mut R) -> Strategy {
    let total: u32 = mix.iter().map(|m| m.1).sum();
    let mut x = rng.gen_range(0..total.max(1));
    for &(s, w) in mix {
        if x < w {
            return s;
        }
        x -= w;
    }
    Strategy::Uniform
}

/// The certificate assignment of one fuzz iteration. Falls back to uniform sampling
/// when no donor is available or a corruption cannot apply.
pub fn fuzz_assignment(
    scheme: Scheme,
    g: &Graph,
    donors: &[Vec<Certificate>],
    mix: &[(Strategy, u32)],
    seed: u64,
) -> (Strategy, Vec<Certificate>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strategy = pick_strategy(mix, &mut rng);
    let uniform = |rng: &mut ChaCha8Rng| {
        let t = schemes::template(scheme, &Dims::of(g));
        (0..g.n()).map(|_| sample_in_domain(&t, g.ids(), rng)).collect::<Vec<_>>()
    };
    let Some(donor) = donors.choose(&mut rng).filter(|_| strategy != Strategy::Uniform) else {
        return (Strategy::Uniform, uniform(&mut rng));
    };
    match strategy {
        Strategy::Shadow => {
            let mut c = donor.clone();
            c.shuffle(&mut rng);
            (strategy, c)
        }
        Strategy::Corrupt(how) => {
            let mut c = donor.clone();
            for _ in 0..rng.gen_range(1..=3) {
                match corrupt(&c, how, &mut rng) {
                    Some(next) => c = next,
                    None => return (Strategy::Uniform, uniform(&mut rng)),
                }
            }
            (strategy, c)
        }
        Strategy::Uniform => unreachable!(),
    }
}

/// Runs `cfg.iters` sampled assignments on the no-instance `g` and records every
/// assignment all nodes accept.
pub fn fuzz(fixture: &str, g: &Graph, near: &[(Graph, GeometricModel)], cfg: &FuzzConfig) -> FuzzReport {
    let pool = donors(cfg.scheme, g, near, 16);
    let one = |i: u64| {
        let s = iteration_seed(cfg.seed, i);
        let (strategy, certs) = fuzz_assignment(cfg.scheme, g, &pool, &cfg.mix, s);
        let accepted = run(cfg.scheme, g, &certs, s).accepted();
        (strategy, accepted.then_some(Finding { iteration: i, seed: s, strategy }))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<(Strategy, Option<Finding>)> = {
        use rayon::prelude::*;
        (0..cfg.iters).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(Strategy, Option<Finding>)> = (0..cfg.iters).map(one).collect();
    let mut per: Vec<(String, u64)> = Vec::new();
    for (s, _) in &results {
        let tag = s.tag();
        match per.iter_mut().find(|p| p.0 == tag) {
            Some(p) => p.1 += 1,
            None => per.push((tag, 1)),
        }
    }
    per.sort();
    let findings: Vec<Finding> = results.into_iter().filter_map(|r| r.1).collect();
    FuzzReport {
        fixture: fixture.to_string(),
        scheme: cfg.scheme,
        n: g.n(),
        iterations: cfg.iters,
        donors: pool.len(),
        per_strategy: per,
        accepts: findings.len(),
        findings,
    }
}

/// Declared proof-size constants: every certificate of the scheme on `n >= 2` nodes
/// with identifiers in `[1, n^3]` has at most `k * ceil(log2 n) + c` bits.
pub const BIT_CONSTANTS: [(Scheme, u32, u32); 9] = [
    (Scheme::ProperInterval, 7, 0),
    (Scheme::Interval, 29, 5),
    (Scheme::Chordal, 26, 4),
    (Scheme::ProperCircularArc, 18, 5),
    (Scheme::CircularArc, 12, 1),
    (Scheme::Trapezoid, 36, 15),
    (Scheme::Permutation, 36, 15),
    (Scheme::SpanningTree, 8, 0),
    (Scheme::Size, 10, 1),
];

pub fn bit_constants(scheme: Scheme) -> Option<(u32, u32)> {
    BIT_CONSTANTS.iter().find(|c| c.0 == scheme).map(|c| (c.1, c.2))
}

/// Certificate size of `scheme` on `n` nodes. Domains are fixed per field, so every
/// certificate, honest or not, has this size.
pub fn cert_bits(scheme: Scheme, n: usize) -> u32 {
    schemes::template(scheme, &Dims::new(n, id_bound(n, crate::graph::DEFAULT_ID_EXPONENT))).bits()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitsRow {
    pub n: usize,
    pub log2n: u32,
    pub bits: u32,
    pub bound: u32,
    pub ratio: f64,
}

pub fn bits_table(scheme: Scheme, ns: &[usize]) -> Vec<BitsRow> {
    let (k, c) = bit_constants(scheme).unwrap_or((0, 0));
    ns.iter()
        .map(|&n| {
            let log2n = crate::ceil_log2(n as u64);
            let bits = cert_bits(scheme, n);
            BitsRow { n, log2n, bits, bound: k * log2n + c, ratio: bits as f64 / log2n.max(1) as f64 }
        })
        .collect()
}

/// Bound and growth violations over `ns`: `bits > k log n + c`, or
/// `bits(4n) - bits(n) > 2k` for consecutive entries that differ by a factor of 4.
pub fn compactness_violations(scheme: Scheme, ns: &[usize]) -> Vec<String> {
    let (k, _) = bit_constants(scheme).unwrap_or((0, 0));
    let rows = bits_table(scheme, ns);
    let mut out: Vec<String> =
        rows.iter().filter(|r| r.bits > r.bound).map(|r| format!("n={}: {} > {}", r.n, r.bits, r.bound)).collect();
    for w in rows.windows(2) {
        if w[1].n == 4 * w[0].n && w[1].bits - w[0].bits > 2 * k {
            out.push(format!("n={}->{}: grew by {} > {}", w[0].n, w[1].n, w[1].bits - w[0].bits, 2 * k));
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub graphs: usize,
    pub members: Vec<(String, usize)>,
    pub violations: Vec<String>,
}

/// The class inclusions over every connected labeled graph with `1..=n_max` nodes.
pub fn oracle_lattice(n_max: usize) -> LatticeReport {
    let mut report = LatticeReport::default();
    let names = ["proper-interval", "interval", "chordal", "proper-arc", "arc", "permutation", "trapezoid-no"];
    let mut counts = [0usize; 7];
    for n in 1..=n_max {
        for g in connected_labeled(n) {
            report.graphs += 1;
            let pi = oracles::is_proper_interval(&g);
            let iv = oracles::is_interval(&g);
            let ch = oracles::is_chordal(&g).is_some();
            let search = |p| oracles::search_ordering(&g, p, false).expect("within the search limit").is_some();
            let pca = search(OrderingProperty::CircularlyCompatible);
            let ca = search(OrderingProperty::QuasiCircular);
            let perm = oracles::is_permutation_graph(&g);
            let trap_no = oracles::trapezoid_membership_fixture(&g, None) == FixtureVerdict::No;
            for (c, b) in counts.iter_mut().zip([pi, iv, ch, pca, ca, perm, trap_no]) {
                *c += b as usize;
            }
            let edges = g.edges();
            for (bad, what) in [
                (pi && !iv, "proper-interval but not interval"),
                (iv && !ch, "interval but not chordal"),
                (iv && !ca, "interval but no quasi-circular ordering"),
                (pi && !pca, "proper-interval but no circularly-compatible ordering"),
                (perm && trap_no, "permutation graph meets a trapezoid no-criterion"),
            ] {
                if bad {
                    report.violations.push(format!("n={n} {edges:?}: {what}"));
                }
            }
        }
    }
    report.members = names.iter().map(|s| s.to_string()).zip(counts).collect();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub scheme: Scheme,
    pub graphs: usize,
    pub yes: usize,
    pub disagreements: Vec<String>,
}

/// Maximal cliques by subset enumeration.
fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let is_clique = |m: u32| (0..n).all(|u| m >> u & 1 == 0 || (u + 1..n).all(|v| m >> v & 1 == 0 || g.has_edge(u, v)));
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
    cliques
        .iter()
        .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// Whether the scheme's prover accepts some witness for `g`, with witnesses found
/// without the class oracle.
fn prover_succeeds(scheme: Scheme, g: &Graph) -> bool {
    let n = g.n();
    match scheme {
        Scheme::ProperInterval => {
            let mut items: Vec<usize> = (0..n).collect();
            for_each_permutation(&mut items, 0, &mut |p| {
                proper_interval::prove(g, &Ordering { order: p.to_vec() }).is_ok()
            })
        }
        Scheme::Chordal => {
            let mut peo = oracles::maximum_cardinality_search(g);
            peo.reverse();
            let tree = oracles::clique_tree_from_peo(g, &peo);
            chordal::chordal_prove(g, &tree).is_ok()
        }
        Scheme::Interval => {
            let cliques = maximal_cliques(g);
            let mut items: Vec<usize> = (0..cliques.len()).collect();
            for_each_permutation(&mut items, 0, &mut |p| {
                let bags = p.iter().map(|&i| cliques[i].clone()).collect();
                chordal::interval_prove(g, &CliqueTree::path(bags)).is_ok()
            })
        }
        Scheme::ProperCircularArc => match oracles::proper_arc_model(g).expect("within the enumeration limit") {
            Some(m) => circular::proper_circ_prove_from_arcs(g, &m).is_ok(),
            None => false,
        },
        Scheme::CircularArc => {
            let mut items: Vec<usize> = (0..n).collect();
            for_each_permutation(&mut items, 1, &mut |p| {
                circular::circ_prove(g, &Ordering { order: p.to_vec() }).is_ok()
            })
        }
        Scheme::Permutation => match oracles::permutation_model_search(g).expect("within the search limit") {
            Some(m) => trapezoid::permutation_prove(g, &m).is_ok(),
            None => false,
        },
        _ => false,
    }
}

/// The class oracle used as ground truth against the prover. Circular-arc membership
/// comes from the arc enumeration up to its limit and from the quasi-circular ordering
/// search above it.
fn oracle_says_yes(scheme: Scheme, g: &Graph) -> bool {
    match scheme {
        Scheme::ProperInterval => oracles::is_interval(g) && !oracles::has_claw(g),
        Scheme::Chordal => !g.has_induced_cycle_at_least(4).expect("small graph"),
        Scheme::Interval => oracles::is_interval(g),
        Scheme::ProperCircularArc => {
            oracles::search_ordering(g, OrderingProperty::CircularlyCompatible, false).expect("small graph").is_some()
        }
        Scheme::CircularArc if g.n() <= oracles::ARC_BRUTE_MAX_N => oracles::brute_force_arc_graph(g).expect("small"),
        Scheme::CircularArc => {
            oracles::search_ordering(g, OrderingProperty::QuasiCircular, false).expect("small graph").is_some()
        }
        Scheme::Permutation => oracles::is_permutation_graph(g),
        _ => false,
    }
}

/// Prover success against the oracle on one graph per isomorphism class with
/// `1..=n_max` nodes. Both sides are invariant under relabeling.
pub fn prover_agreement(scheme: Scheme, n_max: usize) -> AgreementReport {
    let mut report = AgreementReport { scheme, graphs: 0, yes: 0, disagreements: Vec::new() };
    for n in 1..=n_max {
        for g in connected_unlabeled(n) {
            report.graphs += 1;
            let oracle = oracle_says_yes(scheme, &g);
            report.yes += oracle as usize;
            let prover = prover_succeeds(scheme, &g);
            if prover != oracle {
                report.disagreements.push(format!("{:?}: prover {prover}, oracle {oracle}", g.edges()));
            }
        }
    }
    report
}

/// Trim partition and leader conditions on generated chordal graphs; returns failures.
pub fn chordal_lemma_failures(instances: usize, ns: RangeInclusive<usize>, seed: u64) -> Vec<String> {
    let span = ns.end() - ns.start() + 1;
    let mut out = Vec::new();
    for i in 0..instances {
        let n = ns.start() + i % span;
        let s = iteration_seed(seed, i as u64);
        let Ok((g, GeometricModel::CliqueTree(tree))) = random_model(Scheme::Chordal, n, s) else {
            out.push(format!("n={n} seed={s}: generator failed"));
            continue;
        };
        let result = (|| -> Result<(), String> {
            let classes = tree.trim_partition().map_err(|e| e.to_string())?;
            chordal::check_trim_partition(&tree, &classes, n)?;
            let t = tree.normalize(&g).map_err(|e| e.to_string())?;
            let classes = t.trim_partition().map_err(|e| e.to_string())?;
            chordal::check_trim_partition(&t, &classes, n)?;
            let leaders = t.choose_leaders(&g).map_err(|e| e.to_string())?;
            chordal::check_leaders(&g, &t, &leaders)
        })();
        if let Err(e) = result {
            out.push(format!("n={n} seed={s}: {e}"));
        }
    }
    out
}

/// `f_t = f_b` at every node of generated proper trapezoid models, from the definition
/// and from the neighbourhood-only count; returns failures.
pub fn trapezoid_count_failures(instances: usize, ns: RangeInclusive<usize>, seed: u64) -> Vec<String> {
    let span = ns.end() - ns.start() + 1;
    let mut out = Vec::new();
    for i in 0..instances {
        let n = ns.start() + i % span;
        let s = iteration_seed(seed, i as u64);
        let Ok((g, GeometricModel::Trapezoid(m))) = random_model(Scheme::Trapezoid, n, s) else {
            out.push(format!("n={n} seed={s}: generator failed"));
            continue;
        };
        let certs = match trapezoid::trapezoid_prove(&g, &m) {
            Ok(c) => c,
            Err(e) => {
                out.push(format!("n={n} seed={s}: {e}"));
                continue;
            }
        };
        for v in 0..n {
            let (ft, fb) = trapezoid::global_counts(&g, &m, v);
            let local = trapezoid::local_counts(&certs[v], g.neighbors(v).iter().map(|&u| &certs[u]));
            if ft != fb || local != (ft, fb) {
                out.push(format!("n={n} seed={s} node {v}: f_t={ft} f_b={fb} local={local:?}"));
            }
        }
    }
    out
}

/// Every crossing of `Q_k` for `k <= k_max` must contain an induced cycle on five or
/// more nodes; returns the crossings that do not.
pub fn crossing_cycle_failures(k_max: usize) -> Vec<String> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        for i in 1..=k {
            for j in i + 1..=k {
                let g = oracles::crossed_q(k, i, j).expect("valid crossing");
                if !g.has_induced_cycle_at_least_within(5, 5 * k_max).unwrap_or(false) {
                    out.push(format!("k={k} i={i} j={j}"));
                }
            }
        }
    }
    out
}

/// Verdicts per node under `perms` neighbour orders, on honest and corrupted
/// assignments of generated instances; returns instances whose rejecting sets differ.
pub fn neighbor_order_failures(instances: usize, perms: u64, seed: u64) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..instances {
        let scheme = Scheme::CLASSES[i % Scheme::CLASSES.len()];
        let s = iteration_seed(seed, i as u64);
        let Ok((g, m)) = random_model(scheme, 8 + i % 9, s) else { continue };
        let Ok(honest) = schemes::prove(scheme, &g, &m) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let corrupted = corrupt(&honest, Corruption::ResampleField, &mut rng).unwrap_or_else(|| honest.clone());
        for certs in [&honest, &corrupted] {
            let base = run(scheme, &g, certs, 0).rejecting_ids;
            for p in 1..=perms / 2 {
                let r = run(scheme, &g, certs, iteration_seed(s, p));
                if r.rejecting_ids != base {
                    out.push(format!("{scheme} instance {i} order {p}: {:?} vs {base:?}", r.rejecting_ids));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cycle, Registry};

    #[test]
    fn small_completeness_sweep() {
        for scheme in Scheme::CLASSES {
            let r = completeness(scheme, 12, 4..=15, 1);
            assert_eq!(r.accepted, 12, "{scheme}: {:?}", r.failures);
        }
    }

    #[test]
    fn fuzz_is_deterministic_and_finds_nothing_on_c4() {
        let cfg = FuzzConfig::new(Scheme::Chordal, 300, 5);
        let a = fuzz("c4", &cycle(4), &[], &cfg);
        let b = fuzz("c4", &cycle(4), &[], &cfg);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.accepts, 0);
        assert!(a.donors > 0);
        assert_eq!(a.per_strategy.iter().map(|p| p.1).sum::<u64>(), 300);
    }

    #[test]
    fn donors_of_the_crossing_include_q3() {
        let r = Registry::builtin();
        let e = r.get("crossed-q3").unwrap();
        let q = r.get("q3").unwrap();
        let near = near_instances(&r, &e.graph);
        assert_eq!(near, [(q.graph.clone(), q.model.clone().unwrap())]);
        assert!(!donors(Scheme::Permutation, &e.graph, &near, 0).is_empty());
    }

    #[test]
    fn bits_follow_the_declared_constants() {
        let ns = [2, 3, 5, 16, 64, 100, 256, 1024, 4096];
        for (scheme, _, _) in BIT_CONSTANTS {
            assert!(compactness_violations(scheme, &ns).is_empty(), "{scheme}");
        }
    }

    #[test]
    fn maximal_cliques_of_a_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(maximal_cliques(&g), vec![vec![0, 1], vec![1, 2]]);
    }
}

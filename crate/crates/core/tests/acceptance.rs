//! Acceptance campaigns. Runs without the libtest harness and prints one line per
//! criterion; exits non-zero if any criterion fails.

use std::time::Instant;

use geocert::campaign::{self, FuzzConfig};
use geocert::fixtures::Registry;
use geocert::Scheme;

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn completeness() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for scheme in Scheme::CLASSES {
        let r = campaign::completeness(scheme, 200, 4..=48, SEED);
        ok &= r.accepted == 200;
        detail.push(format!("{scheme} {}/200", r.accepted));
        for f in r.failures.iter().take(3) {
            eprintln!("  completeness {scheme}: n={} seed={} {}", f.n, f.seed, f.error);
        }
    }
    Outcome { ok, detail: detail.join(", ") }
}

fn soundness() -> Outcome {
    let registry = Registry::builtin();
    let pairs = registry.no_pairs();
    let mut total = 0;
    for (entry, class) in &pairs {
        let near = campaign::near_instances(&registry, &entry.graph);
        let r = campaign::fuzz(entry.name, &entry.graph, &near, &FuzzConfig::new(*class, 100_000, SEED));
        total += r.accepts;
        for f in &r.findings {
            eprintln!(
                "  finding {} / {class}: iteration {} seed {} ({})",
                entry.name,
                f.iteration,
                f.seed,
                f.strategy.tag()
            );
        }
    }
    Outcome {
        ok: total == 0 && pairs.len() == 11,
        detail: format!("{} pairs x 1e5 assignments, {total} accepts", pairs.len()),
    }
}

fn lattice() -> Outcome {
    let r = campaign::oracle_lattice(6);
    for v in r.violations.iter().take(5) {
        eprintln!("  lattice: {v}");
    }
    Outcome { ok: r.violations.is_empty(), detail: format!("{} graphs, {} violations", r.graphs, r.violations.len()) }
}

fn agreement() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for scheme in [
        Scheme::ProperInterval,
        Scheme::Chordal,
        Scheme::Interval,
        Scheme::ProperCircularArc,
        Scheme::CircularArc,
        Scheme::Permutation,
    ] {
        let r = campaign::prover_agreement(scheme, 6);
        ok &= r.disagreements.is_empty();
        detail.push(format!("{scheme} {}/{} yes, {} disagree", r.yes, r.graphs, r.disagreements.len()));
        for d in r.disagreements.iter().take(3) {
            eprintln!("  agreement {scheme}: {d}");
        }
    }
    Outcome { ok, detail: detail.join(", ") }
}

fn lemmas() -> Outcome {
    let chordal = campaign::chordal_lemma_failures(500, 4..=40, SEED);
    let trapezoid = campaign::trapezoid_count_failures(200, 4..=40, SEED);
    let crossing = campaign::crossing_cycle_failures(4);
    for f in chordal.iter().chain(&trapezoid).chain(&crossing).take(5) {
        eprintln!("  lemma: {f}");
    }
    Outcome {
        ok: chordal.is_empty() && trapezoid.is_empty() && crossing.is_empty(),
        detail: format!(
            "partition/leaders {} failures, f_t = f_b {} failures, crossings {} failures",
            chordal.len(),
            trapezoid.len(),
            crossing.len()
        ),
    }
}

fn compactness() -> Outcome {
    let ns = [1 << 4, 1 << 6, 1 << 8, 1 << 10, 1 << 12];
    let mut violations = Vec::new();
    for scheme in Scheme::CLASSES {
        for v in campaign::compactness_violations(scheme, &ns) {
            violations.push(format!("{scheme}: {v}"));
        }
    }
    for v in &violations {
        eprintln!("  compactness {v}");
    }
    let worst = Scheme::CLASSES
        .iter()
        .map(|&s| format!("{s} {}", campaign::cert_bits(s, 1 << 12)))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { ok: violations.is_empty(), detail: format!("bits at n=4096: {worst}") }
}

fn determinism() -> Outcome {
    let registry = Registry::builtin();
    let entry = registry.get("crossed-q3").expect("builtin fixture");
    let near = campaign::near_instances(&registry, &entry.graph);
    let cfg = FuzzConfig::new(Scheme::Permutation, 2_000, SEED);
    let a = serde_json::to_string(&campaign::fuzz(entry.name, &entry.graph, &near, &cfg)).unwrap();
    let b = serde_json::to_string(&campaign::fuzz(entry.name, &entry.graph, &near, &cfg)).unwrap();
    let c = serde_json::to_string(&campaign::completeness(Scheme::Trapezoid, 30, 4..=48, SEED)).unwrap();
    let d = serde_json::to_string(&campaign::completeness(Scheme::Trapezoid, 30, 4..=48, SEED)).unwrap();
    let order = campaign::neighbor_order_failures(20, 50, SEED);
    for f in order.iter().take(5) {
        eprintln!("  neighbour order: {f}");
    }
    Outcome {
        ok: a == b && c == d && order.is_empty(),
        detail: format!(
            "reports identical: {}, 1000 neighbour orders over 20 instances: {} changed verdicts",
            a == b && c == d,
            order.len()
        ),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 completeness sweep", completeness),
        ("2 soundness fuzzing", soundness),
        ("3 oracle lattice", lattice),
        ("4 prover/oracle agreement", agreement),
        ("5 lemma-level checks", lemmas),
        ("6 compactness", compactness),
        ("7 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        failed += !o.ok as usize;
        println!(
            "[{}] criterion {name}: {} ({:.1}s)",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

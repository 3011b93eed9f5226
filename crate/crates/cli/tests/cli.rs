use std::path::Path;
use std::process::{Command, Output};

fn geocert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geocert")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const C4: &str = "4 4\n0 1\n0 3\n1 2\n2 3\n";

#[test]
fn gen_prove_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for scheme in
        ["proper-interval", "interval", "chordal", "proper-circular-arc", "circular-arc", "trapezoid", "permutation"]
    {
        let out = dir.path().join(scheme);
        let g = geocert(&["gen", "--scheme", scheme, "--n", "10", "--seed", "7", "--out", p(&out)]);
        assert_eq!(code(&g), 0, "{}", String::from_utf8_lossy(&g.stderr));
        let (graph, model, certs) = (out.join("graph.txt"), out.join("model.txt"), out.join("certs.json"));
        let pr =
            geocert(&["prove", "--scheme", scheme, "--graph", p(&graph), "--model", p(&model), "--out", p(&certs)]);
        assert_eq!(code(&pr), 0, "{scheme}: {}", String::from_utf8_lossy(&pr.stderr));
        let v = geocert(&["verify", "--scheme", scheme, "--graph", p(&graph), "--certs", p(&certs)]);
        assert_eq!(code(&v), 0, "{scheme}");
        let report: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
        assert_eq!(report["verdict"], "accept");
        assert_eq!(report["n"], 10);
    }
}

#[test]
fn gen_single_node() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&geocert(&["gen", "--scheme", "interval", "--n", "1", "--out", p(dir.path())])), 0);
    let graph = std::fs::read_to_string(dir.path().join("graph.txt")).unwrap();
    assert_eq!(graph.lines().next(), Some("1 0"));
}

#[test]
fn generated_chordal_graph_passes_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    geocert(&["gen", "--scheme", "chordal", "--n", "40", "--seed", "1", "--out", p(dir.path())]);
    let o = geocert(&["oracle", "--scheme", "chordal", "--graph", p(&dir.path().join("graph.txt"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "yes");
}

#[test]
fn prover_refusals_have_their_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", C4);
    assert_eq!(code(&geocert(&["prove", "--scheme", "chordal", "--graph", &c4])), 3);
    let wrong = write(dir.path(), "m.txt", "class interval\n0 1 2\n1 3 4\n2 5 6\n3 7 8\n");
    assert_eq!(code(&geocert(&["prove", "--scheme", "interval", "--graph", &c4, "--model", &wrong])), 3);
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&geocert(&["prove", "--scheme", "chordal", "--graph", p(&missing)])), 2);
    assert_eq!(code(&geocert(&["prove", "--scheme", "blob", "--graph", &c4])), 2);
}

#[test]
fn malformed_certificates_reject_instead_of_crashing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    geocert(&["gen", "--scheme", "interval", "--n", "12", "--seed", "3", "--out", p(out)]);
    let graph = out.join("graph.txt");
    let certs = out.join("c.json");
    geocert(&[
        "prove",
        "--scheme",
        "interval",
        "--graph",
        p(&graph),
        "--model",
        p(&out.join("model.txt")),
        "--out",
        p(&certs),
    ]);
    let text = std::fs::read_to_string(&certs).unwrap();
    let truncated = write(out, "t.json", &text[..text.len() / 3]);
    let v = geocert(&["verify", "--scheme", "interval", "--graph", p(&graph), "--certs", &truncated]);
    assert_eq!(code(&v), 1);
    assert!(String::from_utf8_lossy(&v.stderr).contains("certificate file rejected"));
    let garbage = write(out, "g.json", "\u{0}\u{1}not json");
    assert_eq!(code(&geocert(&["verify", "--scheme", "interval", "--graph", p(&graph), "--certs", &garbage])), 1);
    // Interval certificates checked as chordal ones.
    assert_eq!(code(&geocert(&["verify", "--scheme", "chordal", "--graph", p(&graph), "--certs", p(&certs)])), 1);
}

#[test]
fn honest_shape_on_a_no_instance_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let path4 = write(out, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let certs = out.join("c.json");
    assert_eq!(code(&geocert(&["prove", "--scheme", "chordal", "--graph", &path4, "--out", p(&certs)])), 0);
    let c4 = write(out, "c4.txt", C4);
    let v = geocert(&["verify", "--scheme", "chordal", "--graph", &c4, "--certs", p(&certs), "--format", "csv"]);
    assert_eq!(code(&v), 1);
    let csv = String::from_utf8(v.stdout).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("chordal,4,reject,"));
}

#[test]
fn fuzz_reports_zero_accepts_and_is_deterministic() {
    let args = ["fuzz", "--scheme", "chordal", "--fixture", "c4", "--iters", "500", "--seed", "9"];
    let a = geocert(&args);
    let b = geocert(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let r: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r[0]["accepts"], 0);
    assert_eq!(r[0]["iterations"], 500);
}

#[test]
fn yes_fixture_in_the_no_slot_is_a_config_error() {
    let o = geocert(&["fuzz", "--scheme", "permutation", "--fixture", "q3", "--iters", "10"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&geocert(&["fuzz", "--fixture", "nonesuch", "--iters", "10"])), 2);
    assert_eq!(code(&geocert(&["fuzz", "--mix", "uniform=0", "--iters", "10"])), 2);
}

#[test]
fn bits_table_respects_the_declared_bound() {
    let o = geocert(&["bits", "--scheme", "proper-interval", "--n", "1024"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v[0]["rows"][0];
    assert!(row["bits"].as_u64().unwrap() <= row["bound"].as_u64().unwrap());
    assert_eq!(code(&geocert(&["bits", "--n", "1"])), 2);
}

#[test]
fn small_report_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let args = [
        "report",
        "--scheme",
        "interval",
        "--instances",
        "5",
        "--iters",
        "200",
        "--n",
        "4..10",
        "--format",
        "csv",
        "--out",
        p(&out),
    ];
    assert_eq!(code(&geocert(&args)), 0);
    let csv = std::fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("section,scheme,subject,total,failures"));
    assert!(csv.contains("fuzz,interval,c4,200,0"));
}

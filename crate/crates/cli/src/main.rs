use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geocert::campaign::{self, FuzzConfig, FuzzReport, Strategy};
use geocert::fixtures::{oracle_verdict, Registry};
use geocert::format::{self, CertificateFile};
use geocert::models::random_model;
use geocert::schemes::{self, SchemeError};
use geocert::{Graph, RunReport, Scheme};
use serde_json::json;

const EXIT_REJECT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(name = "geocert", version, about = "Proof-labeling schemes for geometric graph classes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a random yes-instance of a class: `graph.txt` and `model.txt` in --out.
    Gen {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certificates for a graph from a model file, or from an oracle-found witness.
    Prove {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verifier at every node. Exit 0 iff all nodes accept.
    Verify {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certs: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Class membership by the centralized oracles.
    Oracle {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample certificate assignments on registered no-instances. Exit 1 on any finding.
    Fuzz {
        /// Only pairs for this scheme.
        #[arg(long)]
        scheme: Option<Scheme>,
        /// Only this fixture; it must be a registered no-instance of --scheme.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Strategy weights, e.g. `uniform=2,shadow=1,flip-field=2`.
        #[arg(long)]
        mix: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Certificate sizes against the declared `K log n + C` bound.
    Bits {
        #[arg(long)]
        scheme: Option<Scheme>,
        #[arg(long, value_delimiter = ',', default_values_t = [16usize, 64, 256, 1024, 4096])]
        n: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Completeness sweep, fuzzing and bit growth in one report. Exit 1 on any failure.
    Report {
        #[command(flatten)]
        campaign: CampaignArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CampaignArgs {
    /// Restrict to one scheme.
    #[arg(long)]
    scheme: Option<Scheme>,
    /// Node range of the completeness sweep, `LO..HI`.
    #[arg(long, default_value = "4..48", value_parser = parse_range)]
    n: (usize, usize),
    #[arg(long, default_value_t = 200)]
    instances: usize,
    #[arg(long, default_value_t = 10_000)]
    iters: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    mix: Option<String>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: usize = lo.parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: usize = hi.parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo == 0 || lo > hi {
        return Err("need 1 <= LO <= HI".into());
    }
    Ok((lo, hi))
}

fn parse_mix(s: &str) -> anyhow::Result<Vec<(Strategy, u32)>> {
    let mix = s
        .split(',')
        .map(|part| {
            let (name, w) = part.split_once('=').unwrap_or((part, "1"));
            let strategy: Strategy = name.trim().parse().map_err(|e: String| anyhow!(e))?;
            Ok((strategy, w.trim().parse().with_context(|| format!("weight of `{name}`"))?))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if mix.iter().all(|m| m.1 == 0) {
        bail!("strategy weights are all zero");
    }
    Ok(mix)
}

/// Outcome of a subcommand that ran to completion.
enum Done {
    Ok,
    Reject,
}

/// Failure that maps to a non-usage exit code.
#[derive(Debug)]
struct Refused(SchemeError);

impl std::fmt::Display for Refused {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "prover refused: {}", self.0)
    }
}

impl std::error::Error for Refused {}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    format::parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn class_scheme(scheme: Scheme) -> anyhow::Result<Scheme> {
    if Scheme::CLASSES.contains(&scheme) {
        Ok(scheme)
    } else {
        bail!("`{scheme}` is not a graph class")
    }
}

fn gen(scheme: Scheme, n: usize, seed: u64, out: &Path) -> anyhow::Result<Done> {
    let (g, m) = random_model(class_scheme(scheme)?, n, seed)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let (gp, mp) = (out.join("graph.txt"), out.join("model.txt"));
    fs::write(&gp, format::write_edge_list(&g)).with_context(|| format!("writing {}", gp.display()))?;
    fs::write(&mp, format::write_model(&m)).with_context(|| format!("writing {}", mp.display()))?;
    println!("{}\n{}", gp.display(), mp.display());
    Ok(Done::Ok)
}

fn prove(scheme: Scheme, graph: &Path, model: Option<&Path>, out: &Option<PathBuf>) -> anyhow::Result<Done> {
    let g = read_graph(graph)?;
    let certificates = match model {
        Some(p) => {
            let m = format::parse_model(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            schemes::prove(scheme, &g, &m)
        }
        None => schemes::certify(scheme, &g),
    };
    let certificates = match certificates {
        Ok(c) => c,
        Err(SchemeError::Oracle(e)) => bail!(e),
        Err(e) => return Err(Refused(e).into()),
    };
    emit(out, &CertificateFile { scheme, certificates }.to_json())?;
    Ok(Done::Ok)
}

fn run_report_text(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes"),
        Format::Csv => format!("{}\n{}\n", RunReport::CSV_HEADER, r.csv_row()),
    }
}

fn verify(scheme: Scheme, graph: &Path, certs: &Path, seed: u64, output: &Output) -> anyhow::Result<Done> {
    let g = read_graph(graph)?;
    let text = match fs::read(certs) {
        Ok(bytes) => String::from_utf8_lossy(&bytes).into_owned(),
        Err(e) => return Err(e).with_context(|| format!("reading {}", certs.display())),
    };
    let (report, diagnostics) = format::verify_certificate_text(scheme, &g, &text, seed);
    for d in diagnostics {
        eprintln!("certificate file rejected: {d}");
    }
    for (id, why) in &report.reasons {
        eprintln!("node {id} rejects: {why}");
    }
    emit(&output.out, &run_report_text(&report, output.format))?;
    Ok(if report.accepted() { Done::Ok } else { Done::Reject })
}

fn oracle(scheme: Scheme, graph: &Path) -> anyhow::Result<Done> {
    let g = read_graph(graph)?;
    let verdict = oracle_verdict(class_scheme(scheme)?, &g);
    let v = serde_json::to_value(verdict).expect("verdict serializes");
    let unknown = json!("unknown");
    println!("{}", json!({ "scheme": scheme, "n": g.n(), "verdict": if v.is_null() { &unknown } else { &v } }));
    Ok(Done::Ok)
}

fn fuzz_reports(
    scheme: Option<Scheme>,
    fixture: Option<&str>,
    iters: u64,
    seed: u64,
    mix: Option<&str>,
) -> anyhow::Result<Vec<FuzzReport>> {
    let registry = Registry::builtin();
    let pairs = match (fixture, scheme) {
        (Some(name), Some(class)) => vec![(registry.no_instance(name, class)?, class)],
        (Some(name), None) => {
            let pairs: Vec<_> = registry.no_pairs().into_iter().filter(|p| p.0.name == name).collect();
            if pairs.is_empty() {
                registry.get(name).ok_or_else(|| anyhow!("unknown fixture `{name}`"))?;
                bail!("fixture `{name}` is not a no-instance of any class");
            }
            pairs
        }
        (None, s) => registry.no_pairs().into_iter().filter(|p| s.is_none_or(|s| s == p.1)).collect(),
    };
    if pairs.is_empty() {
        bail!("no registered no-instance for the requested scheme");
    }
    let mix = mix.map(parse_mix).transpose()?;
    Ok(pairs
        .into_iter()
        .map(|(entry, class)| {
            let mut cfg = FuzzConfig::new(class, iters, seed);
            if let Some(m) = &mix {
                cfg.mix = m.clone();
            }
            let near = campaign::near_instances(&registry, &entry.graph);
            campaign::fuzz(entry.name, &entry.graph, &near, &cfg)
        })
        .collect())
}

const FUZZ_CSV_HEADER: &str = "fixture,scheme,n,iterations,donors,accepts,finding_seeds";

fn fuzz_csv_row(r: &FuzzReport) -> String {
    let seeds: Vec<String> = r.findings.iter().map(|f| f.seed.to_string()).collect();
    format!("{},{},{},{},{},{},{}", r.fixture, r.scheme, r.n, r.iterations, r.donors, r.accepts, seeds.join(";"))
}

fn fuzz(
    scheme: Option<Scheme>,
    fixture: Option<&str>,
    iters: u64,
    seed: u64,
    mix: Option<&str>,
    output: &Output,
) -> anyhow::Result<Done> {
    let reports = fuzz_reports(scheme, fixture, iters, seed, mix)?;
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&reports)?,
        Format::Csv => std::iter::once(FUZZ_CSV_HEADER.to_string())
            .chain(reports.iter().map(fuzz_csv_row))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&output.out, &text)?;
    Ok(if reports.iter().all(|r| r.accepts == 0) { Done::Ok } else { Done::Reject })
}

fn bit_schemes(scheme: Option<Scheme>) -> Vec<Scheme> {
    match scheme {
        Some(s) => vec![s],
        None => campaign::BIT_CONSTANTS.iter().map(|c| c.0).collect(),
    }
}

fn bits_json(schemes: &[Scheme], ns: &[usize]) -> (serde_json::Value, bool) {
    let mut ok = true;
    let rows: Vec<serde_json::Value> = schemes
        .iter()
        .map(|&s| {
            let (k, c) = campaign::bit_constants(s).unwrap_or((0, 0));
            let violations = campaign::compactness_violations(s, ns);
            ok &= violations.is_empty();
            json!({ "scheme": s, "k": k, "c": c, "rows": campaign::bits_table(s, ns), "violations": violations })
        })
        .collect();
    (json!(rows), ok)
}

fn bits(scheme: Option<Scheme>, ns: &[usize], output: &Output) -> anyhow::Result<Done> {
    if ns.iter().any(|&n| n < 2) {
        bail!("--n values must be at least 2");
    }
    let schemes = bit_schemes(scheme);
    if let Some(s) = schemes.iter().find(|s| campaign::bit_constants(**s).is_none()) {
        bail!("no declared constants for `{s}`");
    }
    let (value, ok) = bits_json(&schemes, ns);
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&value)?,
        Format::Csv => {
            let mut lines = vec!["scheme,n,log2n,bits,bound,ratio,k".to_string()];
            for &s in &schemes {
                let (k, _) = campaign::bit_constants(s).unwrap_or((0, 0));
                for r in campaign::bits_table(s, ns) {
                    lines.push(format!("{s},{},{},{},{},{:.3},{k}", r.n, r.log2n, r.bits, r.bound, r.ratio));
                }
            }
            lines.join("\n")
        }
    };
    emit(&output.out, &text)?;
    Ok(if ok { Done::Ok } else { Done::Reject })
}

fn report(a: &CampaignArgs, output: &Output) -> anyhow::Result<Done> {
    if a.instances == 0 || a.iters == 0 {
        bail!("--instances and --iters must be positive");
    }
    let classes: Vec<Scheme> = match a.scheme {
        Some(s) => vec![class_scheme(s)?],
        None => Scheme::CLASSES.to_vec(),
    };
    let completeness: Vec<_> =
        classes.iter().map(|&s| campaign::completeness(s, a.instances, a.n.0..=a.n.1, a.seed)).collect();
    let fuzz = fuzz_reports(a.scheme, None, a.iters, a.seed, a.mix.as_deref())?;
    let ns = [16, 64, 256, 1024, 4096];
    let (bits, bits_ok) = bits_json(&classes, &ns);
    let ok = bits_ok && completeness.iter().all(|c| c.failures.is_empty()) && fuzz.iter().all(|f| f.accepts == 0);
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "config": { "n": [a.n.0, a.n.1], "instances": a.instances, "iters": a.iters, "seed": a.seed },
            "completeness": completeness,
            "fuzz": fuzz,
            "bits": bits,
            "ok": ok,
        }))?,
        Format::Csv => {
            let mut lines = vec!["section,scheme,subject,total,failures".to_string()];
            for c in &completeness {
                lines.push(format!("completeness,{},generated,{},{}", c.scheme, c.instances, c.failures.len()));
            }
            for f in &fuzz {
                lines.push(format!("fuzz,{},{},{},{}", f.scheme, f.fixture, f.iterations, f.accepts));
            }
            for &s in &classes {
                let v = campaign::compactness_violations(s, &ns);
                lines.push(format!("bits,{s},{},{},{}", ns.len(), ns.len(), v.len()));
            }
            lines.join("\n")
        }
    };
    emit(&output.out, &text)?;
    Ok(if ok { Done::Ok } else { Done::Reject })
}

fn dispatch(cli: Cli) -> anyhow::Result<Done> {
    match cli.cmd {
        Cmd::Gen { scheme, n, seed, out } => gen(scheme, n, seed, &out),
        Cmd::Prove { scheme, graph, model, out } => prove(scheme, &graph, model.as_deref(), &out),
        Cmd::Verify { scheme, graph, certs, seed, output } => verify(scheme, &graph, &certs, seed, &output),
        Cmd::Oracle { scheme, graph } => oracle(scheme, &graph),
        Cmd::Fuzz { scheme, fixture, iters, seed, mix, output } => {
            fuzz(scheme, fixture.as_deref(), iters, seed, mix.as_deref(), &output)
        }
        Cmd::Bits { scheme, n, output } => bits(scheme, &n, &output),
        Cmd::Report { campaign, output } => report(&campaign, &output),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::Reject) => ExitCode::from(EXIT_REJECT),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Refused>() { EXIT_REFUSED } else { EXIT_USAGE })
        }
    }
}

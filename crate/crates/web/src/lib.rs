//! Browser demo: generate a yes-instance, certify it, corrupt the certificates and see
//! which nodes reject. Every call returns a JSON string.

use geocert::models::{random_model, GeometricModel};
use geocert::runtime::corrupt::{corrupt, Corruption};
use geocert::runtime::{run_pls_with, RunOptions};
use geocert::{format, schemes, Certificate, Graph, Scheme};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest instance the page generates.
pub const MAX_N: usize = 60;

#[derive(Serialize)]
struct Instance<'a> {
    scheme: Scheme,
    n: usize,
    ids: &'a [u64],
    edges: Vec<(usize, usize)>,
    model: String,
}

#[derive(Serialize)]
struct Verification {
    scheme: Scheme,
    accepted: bool,
    rejecting: Vec<usize>,
    reasons: Vec<(u64, String)>,
    bits: u32,
    changed: Vec<usize>,
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn failure(e: impl ToString) -> String {
    serde_json::to_string(&Failure { error: e.to_string() }).expect("serializes")
}

#[wasm_bindgen]
#[derive(Default)]
pub struct Demo {
    scheme: Option<Scheme>,
    graph: Option<Graph>,
    model: Option<GeometricModel>,
    honest: Vec<Certificate>,
    current: Vec<Certificate>,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Demo {
        Demo::default()
    }

    /// A random yes-instance of `scheme` on `n` nodes.
    pub fn generate(&mut self, scheme: &str, n: usize, seed: u32) -> String {
        let scheme: Scheme = match scheme.parse() {
            Ok(s) if Scheme::CLASSES.contains(&s) => s,
            Ok(s) => return failure(format!("`{s}` is not a graph class")),
            Err(e) => return failure(e),
        };
        if !(1..=MAX_N).contains(&n) {
            return failure(format!("n must be in 1..={MAX_N}"));
        }
        let (g, m) = match random_model(scheme, n, seed as u64) {
            Ok(x) => x,
            Err(e) => return failure(e),
        };
        let out = serde_json::to_string(&Instance {
            scheme,
            n,
            ids: g.ids(),
            edges: g.edges(),
            model: format::write_model(&m),
        })
        .expect("serializes");
        *self = Demo { scheme: Some(scheme), graph: Some(g), model: Some(m), ..Demo::default() };
        out
    }

    /// Honest certificates from the generated model, then one verification round.
    pub fn certify(&mut self) -> String {
        let (Some(scheme), Some(g), Some(m)) = (self.scheme, &self.graph, &self.model) else {
            return failure("generate an instance first");
        };
        match schemes::prove(scheme, g, m) {
            Ok(c) => {
                self.honest = c.clone();
                self.current = c;
                self.verify(0)
            }
            Err(e) => failure(e),
        }
    }

    /// Applies one corruption to the current certificates and verifies again.
    pub fn corrupt(&mut self, how: &str, seed: u32) -> String {
        if self.current.is_empty() {
            return failure("certify first");
        }
        let how: Corruption = match how.parse() {
            Ok(c) => c,
            Err(e) => return failure(e),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        match corrupt(&self.current, how, &mut rng) {
            Some(c) => {
                self.current = c;
                self.verify(seed as u64)
            }
            None => failure(format!("`{}` does not apply to these certificates", how.tag())),
        }
    }

    /// Restores the honest certificates.
    pub fn reset(&mut self) -> String {
        if self.honest.is_empty() {
            return failure("certify first");
        }
        self.current = self.honest.clone();
        self.verify(0)
    }

    /// Certificate of node `v` as JSON.
    pub fn certificate(&self, v: usize) -> String {
        match self.current.get(v) {
            Some(c) => serde_json::to_string_pretty(c).expect("serializes"),
            None => failure("no such node"),
        }
    }

    fn verify(&self, seed: u64) -> String {
        let (Some(scheme), Some(g)) = (self.scheme, &self.graph) else {
            return failure("generate an instance first");
        };
        let verify = schemes::verifier(scheme).expect("class schemes have verifiers");
        let r = run_pls_with(scheme, g, &self.current, &verify, RunOptions { seed, shuffle_neighbors: true });
        let index = |id: u64| g.index_of(id).expect("report ids belong to the graph");
        serde_json::to_string(&Verification {
            scheme,
            accepted: r.accepted(),
            rejecting: r.rejecting_ids.iter().map(|&id| index(id)).collect(),
            reasons: r.reasons.clone(),
            bits: r.max_cert_bits,
            changed: (0..g.n()).filter(|&v| self.current[v] != self.honest[v]).collect(),
        })
        .expect("serializes")
    }
}

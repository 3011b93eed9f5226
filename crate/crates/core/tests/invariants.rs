use geocert::format::{self, CertificateFile};
use geocert::models::random_model;
use geocert::runtime::corrupt::{corrupt, Corruption};
use geocert::runtime::{run_pls_with, Dims, RunOptions};
use geocert::schemes::{self, trapezoid};
use geocert::{oracles, Scheme};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class() -> impl Strategy<Value = Scheme> {
    prop::sample::select(Scheme::CLASSES.to_vec())
}

fn corruption() -> impl Strategy<Value = Corruption> {
    prop::sample::select(Corruption::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn honest_certificates_accept_under_any_neighbour_order(class in class(), n in 1usize..40, seed: u64, order: u64) {
        let (g, m) = random_model(class, n, seed).unwrap();
        let certs = schemes::prove(class, &g, &m).unwrap();
        let verify = schemes::verifier(class).unwrap();
        let r = run_pls_with(class, &g, &certs, &verify, RunOptions { seed: order, shuffle_neighbors: true });
        prop_assert!(r.accepted(), "{:?}", r.reasons);
    }

    #[test]
    fn certificate_sizes_are_fixed_by_the_dimensions(class in class(), n in 2usize..40, seed: u64) {
        let (g, m) = random_model(class, n, seed).unwrap();
        let certs = schemes::prove(class, &g, &m).unwrap();
        let t = schemes::template(class, &Dims::of(&g));
        for c in &certs {
            prop_assert_eq!(c.bits(), t.bits());
            prop_assert!(c.in_domain());
        }
    }

    #[test]
    fn generated_graphs_are_class_members(class in class(), n in 1usize..9, seed: u64) {
        let (g, _) = random_model(class, n, seed).unwrap();
        let member = match class {
            Scheme::ProperInterval => oracles::is_proper_interval(&g),
            Scheme::Interval => oracles::is_interval(&g),
            Scheme::Chordal => oracles::is_chordal(&g).is_some(),
            Scheme::Permutation => oracles::is_permutation_graph(&g),
            Scheme::ProperCircularArc => oracles::brute_force_proper_arc_graph(&g).unwrap_or(true),
            _ => true,
        };
        prop_assert!(member);
    }

    #[test]
    fn certificate_files_round_trip(class in class(), n in 1usize..20, seed: u64) {
        let (g, m) = random_model(class, n, seed).unwrap();
        let file = CertificateFile { scheme: class, certificates: schemes::prove(class, &g, &m).unwrap() };
        prop_assert_eq!(CertificateFile::from_json(&file.to_json()).unwrap(), file.clone());
        prop_assert_eq!(format::parse_edge_list(&format::write_edge_list(&g)).unwrap(), g);
        prop_assert_eq!(format::parse_model(&format::write_model(&m)).unwrap(), m);
    }

    #[test]
    fn corruptions_change_the_assignment(class in class(), n in 2usize..20, seed: u64, how in corruption()) {
        let (g, m) = random_model(class, n, seed).unwrap();
        let certs = schemes::prove(class, &g, &m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(bad) = corrupt(&certs, how, &mut rng) {
            prop_assert_eq!(bad.len(), certs.len());
            prop_assert_ne!(bad, certs);
        }
    }

    #[test]
    fn trapezoid_counts_agree(n in 1usize..30, seed: u64) {
        let (g, m) = random_model(Scheme::Trapezoid, n, seed).unwrap();
        let geocert::models::GeometricModel::Trapezoid(m) = m else { unreachable!() };
        let certs = trapezoid::trapezoid_prove(&g, &m).unwrap();
        for v in 0..n {
            let (ft, fb) = trapezoid::global_counts(&g, &m, v);
            prop_assert_eq!(ft, fb);
            let local = trapezoid::local_counts(&certs[v], g.neighbors(v).iter().map(|&u| &certs[u]));
            prop_assert_eq!(local, (ft, fb));
        }
    }
}

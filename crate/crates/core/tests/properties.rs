use proptest::prelude::*;

use ntdom::family_f::is_in_family_f;
use ntdom::generators::{random_mop, random_near_triangulation};
use ntdom::io::{parse_ntri, write_ntri};
use ntdom::oracle::{exact_gamma_pr, exact_gamma_pr2};
use ntdom::paired::compute_paired;
use ntdom::semipaired::compute_semipaired;
use ntdom::sets::{verify_paired_bound, verify_semipaired_bound};
use ntdom::{NearTriangulation, SurgeryError};

fn ntri(max_n: usize) -> impl Strategy<Value = NearTriangulation> {
    (4..=max_n, any::<u64>(), 0.0..1.0f64).prop_map(|(n, seed, frac)| {
        let m = ((n - 3) as f64 * frac) as usize;
        random_near_triangulation(n, m, seed).expect("parameters are in range")
    })
}

fn assert_valid(g: &NearTriangulation) -> Result<(), TestCaseError> {
    let again = NearTriangulation::validate(g.to_raw());
    prop_assert!(again.is_ok(), "{:?}", again.err());
    prop_assert_eq!(g.edge_count(), 3 * g.n() - 3 - g.h());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_instances_are_valid(g in ntri(40)) {
        assert_valid(&g)?;
    }

    #[test]
    fn format_round_trip(g in ntri(30)) {
        let back = parse_ntri(&write_ntri(&g)).unwrap().graph;
        prop_assert_eq!(back.to_raw(), g.to_raw());
    }

    #[test]
    fn generators_are_seed_deterministic(n in 3usize..30, seed in any::<u64>()) {
        prop_assert_eq!(random_mop(n, seed).unwrap().to_raw(), random_mop(n, seed).unwrap().to_raw());
    }

    #[test]
    fn surgery_keeps_validity_and_labels(g in ntri(25), pick in any::<prop::sample::Index>()) {
        let before = g.to_raw();
        let edges = g.edges();
        let (u, v) = edges[pick.index(edges.len())];
        let (lu, lv) = (g.label(u), g.label(v));
        match g.contract_edge(u, v) {
            Ok(h) => {
                assert_valid(&h)?;
                prop_assert_eq!(h.n(), g.n() - 1);
                prop_assert!(h.id_of_label(lu).is_none() && h.id_of_label(lv).is_none());
                prop_assert!(h.id_of_label(g.fresh_label()).is_some());
            }
            Err(SurgeryError::NotContractible(..)) => prop_assert!(!g.is_contractible(u, v).unwrap()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
        if let Ok(h) = g.flip(u, v) {
            assert_valid(&h)?;
            prop_assert_eq!(h.edge_count(), g.edge_count());
        }
        let b = g.outer()[pick.index(g.h())];
        if g.n() > 3 {
            if let Ok(h) = g.remove_vertex(b) {
                assert_valid(&h)?;
                prop_assert_eq!(h.labels().len(), g.n() - 1);
            }
        }
        // surgery never touches its input
        prop_assert_eq!(g.to_raw(), before);
    }

    #[test]
    fn paired_solver_is_verified(g in ntri(60)) {
        let d = compute_paired(&g).unwrap();
        prop_assert!(verify_paired_bound(&g, &d).is_ok());
    }

    #[test]
    fn semipaired_solver_is_verified(g in ntri(60).prop_filter("solver domain", |g| g.n() >= 5 && !is_in_family_f(g))) {
        let d = compute_semipaired(&g).unwrap();
        prop_assert!(verify_semipaired_bound(&g, &d).is_ok());
    }

    #[test]
    fn constructive_sizes_never_beat_exact(g in ntri(11)) {
        prop_assert!(compute_paired(&g).unwrap().len() >= exact_gamma_pr(&g).unwrap());
        if g.n() >= 5 && !is_in_family_f(&g) {
            prop_assert!(compute_semipaired(&g).unwrap().len() >= exact_gamma_pr2(&g).unwrap());
        }
    }
}

//! Property tests for structural invariants that must hold on every input.

use std::sync::Arc;

use proptest::prelude::*;
use semigp::algebra::truncated_polynomial;
use semigp::duality::{a_dual, canonical_map_with, dual_map_with};
use semigp::gallery::{lambda_q, lambda_q_presentation, lsgp_example, ONE, X, Y, Z};
use semigp::homology::{ext_dims, ext_dims_free};
use semigp::io::{load_module_over, module_file, sparse_entries, sparse_matrix};
use semigp::quiver::{build_tensor, module_to_rep, monic_combinatorial, monic_via_ext};
use semigp::random::{random_map, random_module, random_quiver, random_submodule_of_projective, rng};
use semigp::{Algebra, Error, Field, Matrix, Module, Rational, Side};

type Q = Rational;

fn algebras() -> Vec<Arc<Algebra<Q>>> {
    vec![
        truncated_polynomial::<Q>(2),
        truncated_polynomial::<Q>(3),
        lsgp_example::<Q>().unwrap().algebra,
        lambda_q(&Q::from_i64(2)).unwrap().algebra,
    ]
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn random_modules_satisfy_the_action_law(seed in any::<u64>(), which in 0usize..4, right in any::<bool>()) {
        let a = &algebras()[which];
        let side = if right { Side::Right } else { Side::Left };
        let m = random_module(a, side, &mut rng(seed), 6);
        prop_assert!(m.check_action_law().is_ok());
        prop_assert!(Module::new(a, side, m.actions().to_vec(), "copy").is_ok());
    }

    #[test]
    fn random_maps_are_homomorphisms(seed in any::<u64>(), which in 0usize..4) {
        let a = &algebras()[which];
        let mut r = rng(seed);
        let m = random_module(a, Side::Left, &mut r, 5);
        let n = random_module(a, Side::Left, &mut r, 5);
        let f = random_map(&m, &n, &mut r).unwrap();
        prop_assert!(f.check().is_ok());
        for i in 0..a.dim() {
            prop_assert_eq!(n.action(i).mul(&f.matrix), f.matrix.mul(m.action(i)));
        }
    }

    #[test]
    fn dual_of_canonical_map_splits_the_dual_canonical_map(seed in any::<u64>(), which in 0usize..4) {
        let a = &algebras()[which];
        let m = random_module(a, Side::Left, &mut rng(seed), 5);
        let d1 = a_dual(&m).unwrap();
        let d2 = a_dual(&d1.dual).unwrap();
        let d3 = a_dual(&d2.dual).unwrap();
        let phi_m = canonical_map_with(&d1, &d2);
        let phi_dual = canonical_map_with(&d2, &d3);
        let back = dual_map_with(&phi_m, &d3, &d1);
        prop_assert!(back.matrix.mul(&phi_dual.matrix).is_identity());
    }

    #[test]
    fn minimal_and_free_resolutions_give_equal_ext(seed in any::<u64>(), which in 0usize..4) {
        let a = &algebras()[which];
        let mut r = rng(seed);
        let m = random_module(a, Side::Left, &mut r, 5);
        let n = random_module(a, Side::Left, &mut r, 3);
        prop_assert_eq!(ext_dims(&m, &n, 3).unwrap().dims, ext_dims_free(&m, &n, 3).unwrap().dims);
    }

    #[test]
    fn sparse_entries_round_trip(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-3i64..4, 36)) {
        let mut m = Matrix::<Q>::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = Q::from_i64(vals[r * 6 + c]);
            }
        }
        let entries = sparse_entries(&m);
        prop_assert!(entries.iter().all(|(_, _, v)| v != "0"));
        let back = sparse_matrix::<Q>(std::path::Path::new("mem"), rows, cols, &entries).unwrap();
        prop_assert_eq!(back, m);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn module_files_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let a = &algebras()[which];
        let m = random_module(a, Side::Left, &mut rng(seed), 5);
        let dir = std::env::temp_dir().join(format!("semigp-roundtrip-{}-{seed}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.json");
        std::fs::write(&path, serde_json::to_string(&module_file(&m, "a.json")).unwrap()).unwrap();
        let back = load_module_over(&path, a).unwrap();
        std::fs::remove_dir_all(&dir).ok();
        prop_assert_eq!(back.actions(), m.actions());
        prop_assert_eq!(back.side(), m.side());
    }

    #[test]
    fn monic_tests_agree_on_relation_free_quivers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = truncated_polynomial::<Q>(2);
        let q = random_quiver(&mut r, 3);
        let t = build_tensor(&a, &q).unwrap();
        let m = if seed % 2 == 0 {
            random_submodule_of_projective(&t, &mut r, 6)
        } else {
            random_module(&t.flat, Side::Left, &mut r, 4)
        };
        let (rep, _) = module_to_rep(&t, &m).unwrap();
        let combinatorial = monic_combinatorial(&rep);
        let homological = monic_via_ext(&t, &m, 3).unwrap();
        if !homological.is_unknown() {
            prop_assert_eq!(combinatorial.holds(), homological.holds());
        }
    }

    #[test]
    fn lambda_q_is_valid_for_nonzero_q(q in -6i64..7) {
        prop_assume!(q != 0);
        let l = lambda_q(&Q::from_i64(q)).unwrap();
        prop_assert_eq!(l.algebra.dim(), 6);
    }
}

#[test]
fn perturbed_lambda_q_table_is_rejected() {
    // An extra z term in x*y is incompatible with x*(yx) = 0.
    let mut p = lambda_q_presentation(&Q::from_i64(2));
    p.set(X, Y, Z, Q::from_i64(1));
    assert!(matches!(Algebra::validate(p), Err(Error::NonAssociative(..))));
    // Doubling the unit is caught as well.
    let mut p = lambda_q_presentation(&Q::from_i64(2));
    p.set(ONE, ONE, ONE, Q::from_i64(1));
    assert!(Algebra::validate(p).is_err());
}

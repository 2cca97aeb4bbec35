//! Identities of the root-of-NOT matrices and of the simulator.

use cnq::oracle::{adjoint, mat_mul, max_diff, q_matrix, simulate, IDENTITY, NOT};
use cnq::random::{random_circuit_unchecked, seeded_rng, RandomConfig};
use cnq::expr::Assignment;
use proptest::prelude::*;

const EPS: f64 = 1e-12;

fn arb_k() -> impl Strategy<Value = u32> {
    prop_oneof![Just(1u32), Just(2), Just(4), Just(8), Just(16)]
}

proptest! {
    #[test]
    fn roots_are_unitary(k in arb_k(), p in -40i64..40) {
        let q = q_matrix(k, p).unwrap();
        prop_assert!(max_diff(&mat_mul(&q, &adjoint(&q)), &IDENTITY) < EPS);
    }

    #[test]
    fn powers_add(k in arb_k(), a in -40i64..40, b in -40i64..40) {
        let lhs = mat_mul(&q_matrix(k, a).unwrap(), &q_matrix(k, b).unwrap());
        prop_assert!(max_diff(&lhs, &q_matrix(k, a + b).unwrap()) < EPS);
    }

    #[test]
    fn adjoint_is_the_inverse_power(k in arb_k(), p in -40i64..40) {
        prop_assert!(max_diff(&adjoint(&q_matrix(k, p).unwrap()), &q_matrix(k, -p).unwrap()) < EPS);
    }

    #[test]
    fn not_shifts_the_power_by_k(k in arb_k(), p in -40i64..40) {
        let shifted = mat_mul(&NOT, &q_matrix(k, p).unwrap());
        prop_assert!(max_diff(&shifted, &q_matrix(k, p + i64::from(k)).unwrap()) < EPS);
    }

    #[test]
    fn halving_the_order_halves_the_power(k in prop_oneof![Just(1u32), Just(2), Just(4), Just(8)], p in -20i64..20) {
        prop_assert!(max_diff(&q_matrix(2 * k, 2 * p).unwrap(), &q_matrix(k, p).unwrap()) < EPS);
    }

    #[test]
    fn simulation_preserves_norm(seed in any::<u64>()) {
        let c = random_circuit_unchecked(&mut seeded_rng(seed), &RandomConfig::default());
        let lines = c.line_ids();
        for point in Assignment::enumerate(&lines) {
            let s = simulate(&c, &point, 12).unwrap();
            prop_assert!((s.norm() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn k_th_power_is_not_and_2k_th_is_identity() {
    for k in [1, 2, 4, 8] {
        assert!(max_diff(&q_matrix(k, i64::from(k)).unwrap(), &NOT) < EPS);
        assert!(max_diff(&q_matrix(k, 2 * i64::from(k)).unwrap(), &IDENTITY) < EPS);
    }
}

#[test]
fn bad_orders_are_rejected() {
    for k in [0, 3, 6, 12] {
        assert_eq!(q_matrix(k, 1).unwrap_err().code(), "E_BAD_K");
    }
}

//! The exponent calculus checked against the simulator and against brute force.

mod common;

use cnq::circuit::{Circuit, Gate, Line, Role};
use cnq::expr::{Anf, Assignment, MlPoly, DEFAULT_ENUM_GUARD};
use cnq::oracle::{cross_check, max_diff, q_matrix, DEFAULT_SIM_GUARD};
use cnq::random::{random_circuit, seeded_rng, RandomConfig};
use cnq::symbolic::{collapse, equivalent, evaluate, Equivalence, Outcome, TargetState};
use common::{arb_anf, arb_k, arb_poly, v, vars};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    any::<u64>().prop_map(|seed| random_circuit(&mut seeded_rng(seed), &RandomConfig::default()))
}

/// Controls `x0..x2`, one target `t`, and only root-of-NOT gates on `t`.
fn fan_in_circuit(gates: Vec<(u32, i64, u8)>) -> Circuit {
    let xs = vars(3);
    let mut lines: Vec<Line> = xs.iter().map(|x| Line { id: *x, role: Role::Control }).collect();
    lines.push(Line { id: v("t"), role: Role::Target });
    let gates = gates
        .into_iter()
        .map(|(k, p, mask)| {
            let controls = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect();
            Gate::new(k, p, controls, v("t"))
        })
        .filter(|g| g.p != 0)
        .collect();
    Circuit { lines, gates, specs: Default::default() }
}

fn arb_fan_in_gates() -> impl Strategy<Value = Vec<(u32, i64, u8)>> {
    proptest::collection::vec((prop_oneof![Just(2u32), Just(4), Just(8)], 1i64..16, 0u8..8), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbolic_prediction_matches_simulation(c in arb_circuit()) {
        let report = evaluate(&c).unwrap();
        let verdict = cross_check(&c, &report, DEFAULT_SIM_GUARD).unwrap();
        prop_assert!(verdict.passed(), "{:?}\n{}", verdict, cnq::circuit::render(&c));
    }

    #[test]
    fn exponent_contributions_commute(gates in arb_fan_in_gates(), seed in any::<u64>()) {
        let c = fan_in_circuit(gates);
        let mut shuffled = c.gates.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut seeded_rng(seed));
        let d = c.with_gates(shuffled);
        let (a, b) = (evaluate(&c).unwrap(), evaluate(&d).unwrap());
        // NOT-family gates land in the base or in `E` depending on order, so
        // compare normal forms rather than the raw outcomes.
        let (ka, ea) = a.outcome(v("t")).unwrap().normal_form();
        let (kb, eb) = b.outcome(v("t")).unwrap().normal_form();
        let k = ka.max(kb);
        prop_assert_eq!(ea.scale(k / ka).reduce_mod(2 * u64::from(k)), eb.scale(k / kb).reduce_mod(2 * u64::from(k)));
        prop_assert_eq!(equivalent(&c, &d, DEFAULT_ENUM_GUARD).unwrap(), Equivalence::Equivalent);
    }

    /// Odd powers of V, each non-Boolean alone, sum to `2·arith(f)` and so
    /// flip the target by `f`.
    #[test]
    fn split_roots_combine_into_a_boolean_update(f in arb_anf(3)) {
        let arith = MlPoly::from_anf(&f);
        let mut gates = Vec::new();
        for (m, coeff) in arith.terms() {
            let mask = vars(3).iter().enumerate().filter(|(_, x)| m.contains(**x)).fold(0u8, |acc, (i, _)| acc | 1 << i);
            let target = (BigInt::from(2) * coeff).mod_floor(&BigInt::from(4)).to_i64().unwrap();
            gates.push((2, 1, mask));
            gates.push((2, target - 1, mask));
        }
        let c = fan_in_circuit(gates);
        let report = evaluate(&c).unwrap();
        let Some(outcome) = report.outcome(v("t")) else { unreachable!() };
        let expected = Anf::var(v("t")) ^ f.clone();
        if f.is_zero() && c.gates.is_empty() {
            prop_assert_eq!(outcome, &Outcome::Pure(expected));
        } else {
            prop_assert_eq!(outcome.value(), Some(&expected));
        }
    }

    #[test]
    fn collapse_is_sound_and_complete(e in arb_poly(4, 0, 16), k in arb_k()) {
        let e = e.reduce_mod(2 * u64::from(k));
        let verdict = collapse(k, &e);
        let m = BigInt::from(2 * k);
        let mut boolean = true;
        for point in Assignment::enumerate(&vars(4)) {
            let value = e.eval(&point).unwrap().mod_floor(&m);
            let is_zero = value == BigInt::from(0);
            let is_k = value == BigInt::from(k);
            boolean &= is_zero || is_k;
            if let Some(f) = &verdict {
                prop_assert_eq!(f.eval(&point).unwrap(), is_k);
            }
        }
        prop_assert_eq!(verdict.is_some(), boolean);
    }

    #[test]
    fn rebasing_keeps_the_operator(e in arb_poly(3, 0, 8), k in prop_oneof![Just(1u32), Just(2), Just(4)], up in 1u32..3) {
        let mut state = TargetState::new(Anf::var(v("t")), k);
        state.e = e.reduce_mod(2 * u64::from(k));
        let mut bigger = state.clone();
        bigger.rebase(k << up);
        prop_assert_eq!(bigger.k, k << up);
        for point in Assignment::enumerate(&vars(3)) {
            let small = q_matrix(k, state.e.eval(&point).unwrap().to_i64().unwrap()).unwrap();
            let large = q_matrix(bigger.k, bigger.e.eval(&point).unwrap().to_i64().unwrap()).unwrap();
            prop_assert!(max_diff(&small, &large) < 1e-12);
        }
    }
}

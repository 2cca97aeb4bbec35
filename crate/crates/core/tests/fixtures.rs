//! Golden results for the worked circuits in `fixtures/`.

mod common;

use cnq::circuit::{gate_count, parse, render};
use cnq::expr::DEFAULT_ENUM_GUARD;
use cnq::optimize::{merge_pass, ChangeKind};
use cnq::oracle::{cross_check, DEFAULT_SIM_GUARD};
use cnq::symbolic::{check_spec, equivalent, evaluate, trace, Equivalence, Outcome, SpecResult, SymbolicError};
use common::{anf, fixture, poly, v};

#[test]
fn toffoli_pair_realizations_meet_the_spec() {
    for name in ["fig1", "fig2", "fig3", "fig4_pre", "fig4", "fig5"] {
        let verdicts = check_spec(&fixture(name), DEFAULT_ENUM_GUARD).unwrap();
        assert_eq!(verdicts.len(), 1, "{name}");
        assert_eq!(verdicts[0].line, v("t"));
        assert_eq!(verdicts[0].expected, anf("t ^ a&b ^ b&c"));
        assert_eq!(verdicts[0].result, SpecResult::Pass, "{name}");
    }
}

#[test]
fn fig2_exponent_is_2ab_plus_2bc() {
    let report = evaluate(&fixture("fig2")).unwrap();
    let Some(Outcome::Collapsed { value, base, k, e }) = report.outcome(v("t")) else {
        panic!("t should collapse");
    };
    assert_eq!(*k, 2);
    assert_eq!(*e, poly("2*a*b + 2*b*c"));
    assert_eq!(*base, anf("t"));
    assert_eq!(value.display_factored(Some(v("t"))), "t ^ b&(a ^ c)");
}

#[test]
fn fig6_exponents_are_4ab_and_4abc_mod_8() {
    let tr = trace(&fixture("fig6")).unwrap();
    let c_epoch = tr.epochs.iter().find(|e| e.line == v("c")).unwrap();
    // Line c is read by the last gate, which closes its stretch.
    assert_eq!(c_epoch.closed_by, Some(9));
    let mut c_state = c_epoch.state.clone();
    c_state.rebase(4);
    assert_eq!(c_state.e, poly("4*a*b"));

    let Some(Outcome::Collapsed { k, e, .. }) = tr.report.outcome(v("d")) else { panic!("d should collapse") };
    assert_eq!((*k, e.clone()), (4, poly("4*a*b*c")));
}

#[test]
fn fig6_meets_both_specs() {
    let verdicts = check_spec(&fixture("fig6"), DEFAULT_ENUM_GUARD).unwrap();
    let got: Vec<_> = verdicts.iter().map(|s| (s.line, s.expected.clone(), s.passed())).collect();
    assert_eq!(got, [(v("c"), anf("c ^ a&b"), true), (v("d"), anf("d ^ a&b&c"), true)]);
}

#[test]
fn wrong_spec_fails_with_first_witness() {
    let verdicts = check_spec(&fixture("broken"), DEFAULT_ENUM_GUARD).unwrap();
    let SpecResult::Fail { actual, witness: Some(w) } = &verdicts[0].result else { panic!("expected a failure") };
    assert_eq!(*actual, anf("t ^ a&b ^ b&c"));
    assert_eq!(w.display_in(&[v("a"), v("b"), v("c"), v("t")]), "a=0 b=1 c=1 t=0");
}

#[test]
fn single_v_is_residual() {
    let report = evaluate(&fixture("lonely_v")).unwrap();
    assert_eq!(
        report.outcome(v("t")),
        Some(&Outcome::Residual { base: anf("t"), k: 2, e: poly("a") })
    );
    assert_eq!(report.warnings.len(), 1);
}

#[test]
fn reading_a_residual_target_is_refused() {
    let err = evaluate(&fixture("interaction")).unwrap_err();
    assert!(matches!(err, SymbolicError::TargetInteraction { gate: 1, line, k: 2, .. } if line == v("t")));
    assert_eq!(err.code(), "E_TARGET_INTERACTION");
}

#[test]
fn controlled_gate_counts() {
    for (name, total) in [("fig1", 2), ("fig2", 10), ("fig3", 9), ("fig4", 8), ("fig5", 7), ("fig6", 10)] {
        assert_eq!(gate_count(&fixture(name)).controlled_total, total, "{name}");
    }
    let fig6 = gate_count(&fixture("fig6"));
    assert_eq!((fig6.controlled_on_targets, fig6.controlled_on_controls, fig6.cnot), (8, 2, 2));
    let fig5 = gate_count(&fixture("fig5"));
    assert_eq!((fig5.controlled_on_targets, fig5.controlled_on_controls), (3, 4));
}

#[test]
fn all_toffoli_pair_realizations_are_equivalent() {
    let names = ["fig1", "fig2", "fig3", "fig4_pre", "fig4", "fig5", "broken"];
    for a in names {
        for b in names {
            assert_eq!(equivalent(&fixture(a), &fixture(b), DEFAULT_ENUM_GUARD).unwrap(), Equivalence::Equivalent);
        }
    }
}

#[test]
fn different_circuits_are_told_apart() {
    let one = parse("line a\nline b\nline c\nline t target\nccx a b t").unwrap();
    let Equivalence::Different { line, witness: Some(w), .. } =
        equivalent(&fixture("fig1"), &one, DEFAULT_ENUM_GUARD).unwrap()
    else {
        panic!("expected a difference");
    };
    assert_eq!(line, v("t"));
    assert_eq!(w.display_in(&[v("a"), v("b"), v("c"), v("t")]), "a=0 b=1 c=1 t=0");
    assert!(matches!(
        equivalent(&fixture("fig2"), &fixture("fig6"), DEFAULT_ENUM_GUARD),
        Err(SymbolicError::LineMismatch(_))
    ));
}

#[test]
fn merging_fig2_gives_fig3() {
    let (out, changes) = merge_pass(&fixture("fig2")).unwrap();
    assert_eq!(out.gates.len(), 9);
    assert_eq!(out, fixture("fig3"));
    assert_eq!(changes.len(), 1);
    assert_eq!(changes[0].kind, ChangeKind::Promoted);
    assert_eq!(changes[0].gates, [1, 5]);
    assert_eq!(changes[0].replacement.as_deref(), Some("cnot b t"));
}

#[test]
fn merging_cancels_the_fig4_pair() {
    let (out, changes) = merge_pass(&fixture("fig4_pre")).unwrap();
    assert_eq!(out.gates.len(), 8);
    assert_eq!(out, fixture("fig4"));
    assert_eq!(changes.len(), 1);
    assert_eq!(changes[0].kind, ChangeKind::Cancelled);
    assert_eq!(changes[0].gates, [1, 5]);
}

#[test]
fn fig5_is_a_fixed_point() {
    let c = fixture("fig5");
    let (out, changes) = merge_pass(&c).unwrap();
    assert_eq!(out, c);
    assert!(changes.is_empty());
}

#[test]
fn symbolic_results_agree_with_simulation() {
    for name in common::FIXTURES.iter().filter(|n| **n != "interaction") {
        let c = fixture(name);
        let report = evaluate(&c).unwrap();
        let verdict = cross_check(&c, &report, DEFAULT_SIM_GUARD).unwrap();
        assert!(verdict.passed(), "{name}: {verdict:?}");
    }
}

#[test]
fn fixtures_round_trip_through_render() {
    for name in common::FIXTURES {
        let c = fixture(name);
        assert_eq!(parse(&render(&c)).unwrap(), c, "{name}");
    }
}

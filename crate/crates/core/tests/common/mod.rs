#![allow(dead_code)]

use std::path::PathBuf;

use cnq::circuit::{parse, Circuit};
use cnq::expr::{Anf, MlPoly, Monomial, VarId};
use proptest::prelude::*;

pub const FIXTURES: [&str; 10] =
    ["fig1", "fig2", "fig3", "fig4_pre", "fig4", "fig5", "fig6", "broken", "lonely_v", "interaction"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.cnq"))
}

pub fn fixture(name: &str) -> Circuit {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn v(name: &str) -> VarId {
    VarId::new(name).unwrap()
}

/// `x0 .. x{n-1}`.
pub fn vars(n: usize) -> Vec<VarId> {
    (0..n).map(|i| v(&format!("x{i}"))).collect()
}

pub fn anf(text: &str) -> Anf {
    text.parse().unwrap()
}

pub fn poly(text: &str) -> MlPoly {
    text.parse().unwrap()
}

/// The monomial whose variables are the set bits of `mask` over `vs`.
pub fn monomial_of(vs: &[VarId], mask: u32) -> Monomial {
    Monomial::from_vars(vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v))
}

/// An ANF over the first `n` of `x0..x4`.
pub fn arb_anf(max_vars: usize) -> impl Strategy<Value = Anf> {
    (0..=max_vars).prop_flat_map(|n| {
        let vs = vars(n);
        proptest::collection::vec(0u32..(1 << n), 0..8)
            .prop_map(move |masks| Anf::from_monomials(masks.into_iter().map(|m| monomial_of(&vs, m))))
    })
}

/// A multilinear polynomial with coefficients in `[lo, hi)`.
pub fn arb_poly(max_vars: usize, lo: i64, hi: i64) -> impl Strategy<Value = MlPoly> {
    (0..=max_vars).prop_flat_map(move |n| {
        let vs = vars(n);
        proptest::collection::vec((0u32..(1 << n), lo..hi), 0..10).prop_map(move |terms| {
            terms.into_iter().fold(MlPoly::zero(), |acc, (m, c)| acc + MlPoly::term(c, monomial_of(&vs, m)))
        })
    })
}

/// Root order `K ∈ {1, 2, 4, 8}`.
pub fn arb_k() -> impl Strategy<Value = u32> {
    prop_oneof![Just(1u32), Just(2), Just(4), Just(8)]
}

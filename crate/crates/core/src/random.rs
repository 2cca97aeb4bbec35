//! Seeded random CNQ circuits for self-tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, Line, Role};
use crate::expr::VarId;
use crate::symbolic::{evaluate, SymbolicError};

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub max_lines: usize,
    pub max_gates: usize,
    pub root_orders: Vec<u32>,
    pub max_controls: usize,
    /// Chance that a gate repeats an earlier gate's target and controls with
    /// a power chosen to complete a NOT, which makes collapses and merges common.
    pub complement_rate: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_lines: 5, max_gates: 20, root_orders: vec![1, 2, 4, 8], max_controls: 2, complement_rate: 0.35 }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random circuit with no gate list checks beyond structural validity.
/// It may contain a target interaction.
pub fn random_circuit_unchecked<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> Circuit {
    let n = rng.gen_range(1..=cfg.max_lines.max(1));
    let ids: Vec<VarId> = (0..n).map(|i| VarId::new(&format!("x{i}")).expect("valid name")).collect();
    let gate_count = rng.gen_range(0..=cfg.max_gates);
    let mut gates: Vec<Gate> = Vec::with_capacity(gate_count);
    while gates.len() < gate_count {
        if !gates.is_empty() && rng.gen_bool(cfg.complement_rate) {
            let earlier = gates.choose(rng).expect("nonempty").clone();
            if earlier.k > 1 && !earlier.is_not_family() {
                let k = earlier.k;
                let p = i64::from(k) - i64::from(earlier.p);
                if p.rem_euclid(2 * i64::from(k)) != 0 {
                    gates.push(Gate::new(k, p, earlier.controls, earlier.target));
                    continue;
                }
            }
        }
        let target = *ids.choose(rng).expect("nonempty");
        let others: Vec<VarId> = ids.iter().copied().filter(|v| *v != target).collect();
        let count = rng.gen_range(0..=cfg.max_controls.min(others.len()));
        let controls: Vec<VarId> = others.choose_multiple(rng, count).copied().collect();
        let k = *cfg.root_orders.choose(rng).expect("root orders");
        let p = rng.gen_range(1..2 * i64::from(k));
        gates.push(Gate::new(k, p, controls, target));
    }
    let lines = ids
        .iter()
        .map(|id| {
            let hit = gates.iter().any(|g| g.target == *id && !g.is_not_family());
            Line { id: *id, role: if hit { Role::Target } else { Role::Control } }
        })
        .collect();
    Circuit { lines, gates, specs: Default::default() }
}

/// A random circuit the symbolic evaluator accepts (no target interaction).
/// Draws until one is found.
pub fn random_circuit<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> Circuit {
    loop {
        let c = random_circuit_unchecked(rng, cfg);
        match evaluate(&c) {
            Ok(_) => return c,
            Err(SymbolicError::TargetInteraction { .. }) => continue,
            Err(other) => panic!("generator produced an invalid circuit: {other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let cfg = RandomConfig::default();
        let a = random_circuit(&mut seeded_rng(7), &cfg);
        let b = random_circuit(&mut seeded_rng(7), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn respects_bounds() {
        let cfg = RandomConfig::default();
        let mut rng = seeded_rng(1);
        for _ in 0..100 {
            let c = random_circuit(&mut rng, &cfg);
            assert!(c.lines.len() <= 5 && c.gates.len() <= 20);
            assert!(c.gates.iter().all(|g| [1, 2, 4, 8].contains(&g.k)));
            assert!(crate::circuit::validate(&c).is_empty());
        }
    }
}

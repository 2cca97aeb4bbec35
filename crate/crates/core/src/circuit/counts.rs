use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Circuit, Role};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqCount {
    pub k: u32,
    pub p: u32,
    pub count: usize,
}

/// Gate tallies by category.
///
/// `controlled_total` is the cost unit: every gate with at least one control
/// counts once. Uncontrolled gates are reported separately.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub not: usize,
    pub cnot: usize,
    pub mcx: usize,
    /// Controlled `Q^p` gates outside the NOT family, by `(k, p)`.
    pub cq: Vec<CqCount>,
    pub uncontrolled_q: usize,
    pub controlled_total: usize,
    /// Controlled gates whose target is a target-role line.
    pub controlled_on_targets: usize,
    /// Controlled gates whose target is a control-role line (control-forming CNOTs).
    pub controlled_on_controls: usize,
    pub total: usize,
}

pub fn gate_count(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts { total: c.gates.len(), ..Default::default() };
    let mut cq: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for g in &c.gates {
        let controlled = g.is_controlled();
        if g.k == 1 {
            match g.controls.len() {
                0 => counts.not += 1,
                1 => counts.cnot += 1,
                _ => counts.mcx += 1,
            }
        } else if controlled {
            *cq.entry((g.k, g.p)).or_default() += 1;
        } else {
            counts.uncontrolled_q += 1;
        }
        if controlled {
            counts.controlled_total += 1;
            match c.role_of(g.target) {
                Some(Role::Target) => counts.controlled_on_targets += 1,
                _ => counts.controlled_on_controls += 1,
            }
        }
    }
    counts.cq = cq.into_iter().map(|((k, p), count)| CqCount { k, p, count }).collect();
    counts
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} controlled ({} on target lines, {} on control lines)",
            self.controlled_total, self.controlled_on_targets, self.controlled_on_controls
        )?;
        let mut parts = Vec::new();
        if self.cnot > 0 {
            parts.push(format!("CNOT x{}", self.cnot));
        }
        if self.mcx > 0 {
            parts.push(format!("MCX x{}", self.mcx));
        }
        for c in &self.cq {
            let name = match (c.k, c.p) {
                (2, 1) => "CV".to_string(),
                (2, 3) => "CV*".to_string(),
                (4, 1) => "CW".to_string(),
                (4, 7) => "CW*".to_string(),
                (k, p) => format!("CQ(k={k},p={p})"),
            };
            parts.push(format!("{name} x{}", c.count));
        }
        if self.not > 0 {
            parts.push(format!("uncontrolled NOT x{}", self.not));
        }
        if self.uncontrolled_q > 0 {
            parts.push(format!("uncontrolled Q x{}", self.uncontrolled_q));
        }
        if !parts.is_empty() {
            write!(f, ": {}", parts.join(", "))?;
        }
        Ok(())
    }
}

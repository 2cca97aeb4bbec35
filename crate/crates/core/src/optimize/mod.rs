//! Exponent-level peephole merging.
//!
//! Gates that add to the same target's exponent commute at the exponent level,
//! so any two contributions with the same resolved control (within one
//! uninterrupted root-of-NOT stretch of the target) can be summed into a
//! single gate. A sum of `0` removes the gates, a sum of `K` becomes a
//! NOT-family gate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{gate_count, gate_statement, Circuit, Gate, GateCounts};
use crate::expr::{Anf, VarId};
use crate::symbolic::{trace, SymbolicError};

pub use crate::symbolic::Contribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangeKind {
    /// Gates summed into one controlled-`Q` gate.
    Merged,
    /// Gates whose powers sum to zero, all removed.
    Cancelled,
    /// Gates whose powers sum to `K`, replaced by a NOT-family gate.
    Promoted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Change {
    pub kind: ChangeKind,
    pub target: VarId,
    /// 0-based indices into the input circuit.
    pub gates: Vec<usize>,
    pub control: Anf,
    /// Statement of the emitted gate, placed at the last member's position.
    pub replacement: Option<String>,
}

impl fmt::Display for Change {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members = self.gates.iter().map(|i| format!("#{}", i + 1)).collect::<Vec<_>>().join(", ");
        let verb = match self.kind {
            ChangeKind::Merged => "merged",
            ChangeKind::Cancelled => "cancelled",
            ChangeKind::Promoted => "promoted",
        };
        write!(f, "{verb} gates {members} on `{}` (control {})", self.target, self.control)?;
        if let Some(r) = &self.replacement {
            write!(f, " into `{r}`")?;
        }
        Ok(())
    }
}

/// Smallest root order expressing `Q_k^p`: `Q_{2j}^{2q} = Q_j^q`.
fn lowest_terms(mut k: u32, mut p: u32) -> (u32, u32) {
    while k > 1 && p.is_multiple_of(2) {
        k /= 2;
        p /= 2;
    }
    (k, p)
}

/// Merges same-control contributions on each target line.
///
/// The result is equivalent to `c`, never has more gates, and is a fixed
/// point of a second pass.
pub fn merge_pass(c: &Circuit) -> Result<(Circuit, Vec<Change>), SymbolicError> {
    let tr = trace(c)?;
    let mut groups: HashMap<(usize, &Anf), Vec<&Contribution>> = HashMap::new();
    for contribution in &tr.contributions {
        groups.entry((contribution.epoch, &contribution.resolved_control)).or_default().push(contribution);
    }

    // Keyed by the last member's index, which is where the replacement goes.
    let mut rewrites: BTreeMap<usize, (Option<Gate>, Change)> = BTreeMap::new();
    let mut removed = vec![false; c.gates.len()];
    for members in groups.into_values().filter(|m| m.len() > 1) {
        let last = members.last().expect("nonempty group");
        let epoch_k = last.epoch_k;
        let modulus = 2 * u64::from(epoch_k);
        let sum = members
            .iter()
            .map(|m| u64::from(m.p) * u64::from(epoch_k / m.k))
            .sum::<u64>()
            % modulus;
        let controls = c.gates[last.gate_index].controls.clone();
        let (kind, replacement) = if sum == 0 {
            (ChangeKind::Cancelled, None)
        } else {
            let (k, p) = lowest_terms(epoch_k, sum as u32);
            let gate = Gate::new(k, i64::from(p), controls, last.target);
            let kind = if gate.is_not_family() { ChangeKind::Promoted } else { ChangeKind::Merged };
            (kind, Some(gate))
        };
        for m in &members {
            removed[m.gate_index] = true;
        }
        let change = Change {
            kind,
            target: last.target,
            gates: members.iter().map(|m| m.gate_index).collect(),
            control: last.resolved_control.clone(),
            replacement: replacement.as_ref().map(gate_statement),
        };
        rewrites.insert(last.gate_index, (replacement, change));
    }

    let mut gates = Vec::with_capacity(c.gates.len());
    for (i, g) in c.gates.iter().enumerate() {
        match rewrites.get(&i) {
            Some((Some(replacement), _)) => gates.push(replacement.clone()),
            Some((None, _)) => {}
            None if removed[i] => {}
            None => gates.push(g.clone()),
        }
    }
    let changes = rewrites.into_values().map(|(_, change)| change).collect();
    Ok((c.with_gates(gates), changes))
}

/// Before/after gate counts and the list of rewrites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub before: GateCounts,
    pub after: GateCounts,
    pub changes: Vec<Change>,
}

pub fn report(before: &Circuit, after: &Circuit, changes: &[Change]) -> OptimizeReport {
    OptimizeReport { before: gate_count(before), after: gate_count(after), changes: changes.to_vec() }
}

impl fmt::Display for OptimizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "controlled gates: {} -> {}",
            self.before.controlled_total, self.after.controlled_total
        )?;
        writeln!(f, "before: {}", self.before)?;
        writeln!(f, "after:  {}", self.after)?;
        if self.changes.is_empty() {
            writeln!(f, "no changes")?;
        }
        for change in &self.changes {
            writeln!(f, "- {change}")?;
        }
        Ok(())
    }
}

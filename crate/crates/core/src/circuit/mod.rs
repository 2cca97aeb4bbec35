//! Circuit IR for the CNQ family: NOT, CNOT and multi-controlled NOT plus
//! controlled powers of `Q`, where `Q^k = NOT` for a power of two `k`.

mod counts;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{Anf, VarId};

pub use counts::{gate_count, CqCount, GateCounts};
pub use parse::{parse, ParseError};
pub use render::{gate_statement, render};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Control,
    Target,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Control => "control",
            Role::Target => "target",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub id: VarId,
    pub role: Role,
}

/// One controlled-`Q^p` operation with `Q^k = NOT`.
///
/// `p` is kept as the canonical residue in `[1, 2k)`. The NOT family is the
/// case `p = k`; a plain NOT is `k = 1, p = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub k: u32,
    pub p: u32,
    pub controls: Vec<VarId>,
    pub target: VarId,
}

impl Gate {
    /// Builds a gate, reducing `p` modulo `2k`. No other checks are made
    /// here; see [`validate`].
    pub fn new(k: u32, p: i64, controls: Vec<VarId>, target: VarId) -> Gate {
        let p = p.rem_euclid(2 * i64::from(k.max(1)));
        Gate { k, p: p as u32, controls, target }
    }

    pub fn not(target: VarId) -> Gate {
        Gate::new(1, 1, Vec::new(), target)
    }

    pub fn cnot(control: VarId, target: VarId) -> Gate {
        Gate::new(1, 1, vec![control], target)
    }

    pub fn mcx(controls: Vec<VarId>, target: VarId) -> Gate {
        Gate::new(1, 1, controls, target)
    }

    /// `V` for `p = 1`, `V*` for `p = -1`.
    pub fn v(p: i64, controls: Vec<VarId>, target: VarId) -> Gate {
        Gate::new(2, p, controls, target)
    }

    /// `W` for `p = 1`, `W*` for `p = -1`.
    pub fn w(p: i64, controls: Vec<VarId>, target: VarId) -> Gate {
        Gate::new(4, p, controls, target)
    }

    /// True when the gate acts as a (possibly controlled) NOT: `Q^k`.
    pub fn is_not_family(&self) -> bool {
        self.p == self.k
    }

    pub fn is_controlled(&self) -> bool {
        !self.controls.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    pub lines: Vec<Line>,
    pub gates: Vec<Gate>,
    /// Expected final value of target lines.
    pub specs: BTreeMap<VarId, Anf>,
}

impl Circuit {
    pub fn new(lines: Vec<Line>) -> Self {
        Circuit { lines, ..Default::default() }
    }

    pub fn line(&self, id: VarId) -> Option<&Line> {
        self.lines.iter().find(|l| l.id == id)
    }

    pub fn role_of(&self, id: VarId) -> Option<Role> {
        self.line(id).map(|l| l.role)
    }

    pub fn line_ids(&self) -> Vec<VarId> {
        self.lines.iter().map(|l| l.id).collect()
    }

    pub fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit { lines: self.lines.clone(), gates, specs: self.specs.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagCode {
    #[serde(rename = "E_BAD_K")]
    BadK,
    #[serde(rename = "E_ZERO_POWER")]
    ZeroPower,
    #[serde(rename = "E_SELF_CONTROL")]
    SelfControl,
    #[serde(rename = "E_UNDECLARED_LINE")]
    UndeclaredLine,
    #[serde(rename = "E_DUPLICATE_CONTROL")]
    DuplicateControl,
    #[serde(rename = "E_DUPLICATE_LINE")]
    DuplicateLine,
    #[serde(rename = "E_NO_LINES")]
    NoLines,
    #[serde(rename = "E_SPEC_NOT_TARGET")]
    SpecNotTarget,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::BadK => "E_BAD_K",
            DiagCode::ZeroPower => "E_ZERO_POWER",
            DiagCode::SelfControl => "E_SELF_CONTROL",
            DiagCode::UndeclaredLine => "E_UNDECLARED_LINE",
            DiagCode::DuplicateControl => "E_DUPLICATE_CONTROL",
            DiagCode::DuplicateLine => "E_DUPLICATE_LINE",
            DiagCode::NoLines => "E_NO_LINES",
            DiagCode::SpecNotTarget => "E_SPEC_NOT_TARGET",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    /// 0-based index into the gate list, when the problem belongs to a gate.
    pub gate: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate {
            Some(i) => write!(f, "{} at gate #{}: {}", self.code, i + 1, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

pub(crate) fn check_k(k: u32) -> Result<(), String> {
    if k.is_power_of_two() {
        Ok(())
    } else {
        Err(format!("root order k={k} is not a power of two"))
    }
}

/// Structural problems with `c`; empty exactly when every invariant holds.
pub fn validate(c: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut declared = BTreeSet::new();
    if c.lines.is_empty() {
        out.push(Diagnostic { code: DiagCode::NoLines, gate: None, message: "no lines declared".into() });
    }
    for line in &c.lines {
        if !declared.insert(line.id) {
            out.push(Diagnostic {
                code: DiagCode::DuplicateLine,
                gate: None,
                message: format!("line `{}` declared twice", line.id),
            });
        }
    }
    for (i, g) in c.gates.iter().enumerate() {
        let mut diag = |code, message: String| out.push(Diagnostic { code, gate: Some(i), message });
        if let Err(msg) = check_k(g.k) {
            diag(DiagCode::BadK, msg);
        } else if g.p == 0 || u64::from(g.p) >= 2 * u64::from(g.k) {
            diag(DiagCode::ZeroPower, format!("power p={} is not a nonzero residue mod {}", g.p, 2 * u64::from(g.k)));
        }
        for id in g.controls.iter().chain(std::iter::once(&g.target)) {
            if !declared.contains(id) {
                diag(DiagCode::UndeclaredLine, format!("line `{id}` is not declared"));
            }
        }
        if g.controls.contains(&g.target) {
            diag(DiagCode::SelfControl, format!("line `{}` controls its own gate", g.target));
        }
        let distinct: BTreeSet<_> = g.controls.iter().collect();
        if distinct.len() != g.controls.len() {
            diag(DiagCode::DuplicateControl, "a control line is repeated".into());
        }
    }
    for (line, expr) in &c.specs {
        match c.role_of(*line) {
            Some(Role::Target) => {}
            Some(Role::Control) => out.push(Diagnostic {
                code: DiagCode::SpecNotTarget,
                gate: None,
                message: format!("spec given for control line `{line}`"),
            }),
            None => out.push(Diagnostic {
                code: DiagCode::UndeclaredLine,
                gate: None,
                message: format!("spec given for undeclared line `{line}`"),
            }),
        }
        for v in expr.vars() {
            if !declared.contains(&v) {
                out.push(Diagnostic {
                    code: DiagCode::UndeclaredLine,
                    gate: None,
                    message: format!("spec for `{line}` mentions undeclared line `{v}`"),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> VarId {
        VarId::new(name).unwrap()
    }

    fn base() -> Circuit {
        Circuit::new(vec![
            Line { id: v("a"), role: Role::Control },
            Line { id: v("t"), role: Role::Target },
        ])
    }

    #[test]
    fn powers_are_canonical() {
        assert_eq!(Gate::v(-1, vec![v("a")], v("t")).p, 3);
        assert_eq!(Gate::w(-1, vec![v("a")], v("t")).p, 7);
        assert_eq!(Gate::new(8, -11, vec![], v("t")).p, 5);
        assert!(Gate::cnot(v("a"), v("t")).is_not_family());
        assert!(Gate::new(2, 2, vec![], v("t")).is_not_family());
        assert!(!Gate::v(1, vec![], v("t")).is_not_family());
    }

    #[test]
    fn self_control_is_reported() {
        let c = base().with_gates(vec![Gate::v(1, vec![v("a")], v("t")), Gate::v(1, vec![v("t")], v("t"))]);
        let d = validate(&c);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].code, d[0].gate), (DiagCode::SelfControl, Some(1)));
    }

    #[test]
    fn bad_k_and_zero_power() {
        let c = base().with_gates(vec![
            Gate { k: 3, p: 1, controls: vec![v("a")], target: v("t") },
            Gate { k: 2, p: 0, controls: vec![v("a")], target: v("t") },
            Gate { k: 2, p: 4, controls: vec![v("a")], target: v("t") },
        ]);
        let codes: Vec<_> = validate(&c).into_iter().map(|d| (d.code, d.gate)).collect();
        assert_eq!(
            codes,
            [(DiagCode::BadK, Some(0)), (DiagCode::ZeroPower, Some(1)), (DiagCode::ZeroPower, Some(2))]
        );
    }

    #[test]
    fn undeclared_and_spec_errors() {
        let mut c = base().with_gates(vec![Gate::cnot(v("zz"), v("t"))]);
        c.specs.insert(v("a"), "a".parse().unwrap());
        c.specs.insert(v("t"), "t ^ q".parse().unwrap());
        let codes: Vec<_> = validate(&c).into_iter().map(|d| d.code).collect();
        assert_eq!(codes, [DiagCode::UndeclaredLine, DiagCode::SpecNotTarget, DiagCode::UndeclaredLine]);
        assert_eq!(validate(&Circuit::default())[0].code, DiagCode::NoLines);
    }
}

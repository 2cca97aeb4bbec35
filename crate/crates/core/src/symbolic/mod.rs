//! The exponent calculus.
//!
//! Every line starts as its own variable. NOT-family gates XOR the product of
//! their resolved controls into a line. Any other controlled `Q^p` turns the
//! line into a [`TargetState`], after which gates only add `p·control` to the
//! line's exponent `E` (reduced mod `2K`). A target state that is read as a
//! control, or that reaches the end of the circuit, collapses back to a
//! Boolean value when `E ≡ K·f`.

mod state;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::circuit::{validate, Circuit, Diagnostic, Role};
use crate::expr::{Anf, Assignment, MlPoly, VarId};

pub use state::{collapse, TargetState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("invalid circuit: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(
        "E_TARGET_INTERACTION: gate #{} reads line `{line}` as a control, but it holds Q_{k}^({e}) and is not a Boolean value", .gate + 1
    )]
    TargetInteraction { gate: usize, line: VarId, k: u32, e: MlPoly },
    #[error("E_LINE_MISMATCH: {0}")]
    LineMismatch(String),
    #[error("E_NO_SPECS: the circuit has no `spec` statements")]
    NoSpecs,
}

impl SymbolicError {
    pub fn code(&self) -> &'static str {
        match self {
            SymbolicError::Invalid(d) => d.first().map_or("E_SYNTAX", |d| d.code.as_str()),
            SymbolicError::TargetInteraction { .. } => "E_TARGET_INTERACTION",
            SymbolicError::LineMismatch(_) => "E_LINE_MISMATCH",
            SymbolicError::NoSpecs => "E_NO_SPECS",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineState {
    Pure(Anf),
    Tainted(TargetState),
}

/// Final symbolic value of one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Only NOT-family gates touched the line.
    Pure(Anf),
    /// Roots of NOT acted on the line and their exponent collapsed to `K·f`;
    /// `value = base ⊕ f`.
    Collapsed { value: Anf, base: Anf, k: u32, e: MlPoly },
    /// The line ends in the state `Q_K^E · |base⟩`.
    Residual { base: Anf, k: u32, e: MlPoly },
}

impl Outcome {
    /// The Boolean output, if there is one.
    pub fn value(&self) -> Option<&Anf> {
        match self {
            Outcome::Pure(v) | Outcome::Collapsed { value: v, .. } => Some(v),
            Outcome::Residual { .. } => None,
        }
    }

    /// The line's output as `Q_K^{E_total} |0⟩`, using `|b⟩ = NOT^b |0⟩ = Q_K^{K·b} |0⟩`.
    /// Two outcomes describe the same output state on every input exactly when
    /// their normal forms agree after rebasing to a common `K`.
    pub fn normal_form(&self) -> (u32, MlPoly) {
        match self {
            Outcome::Pure(v) | Outcome::Collapsed { value: v, .. } => (1, MlPoly::from_anf(v).reduce_mod(2)),
            Outcome::Residual { base, k, e } => {
                let total = e + &MlPoly::from_anf(base).scale(*k);
                (*k, total.reduce_mod(2 * u64::from(*k)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReport {
    pub line: VarId,
    pub role: Role,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EvalReport {
    /// One entry per declared line, in declaration order.
    pub lines: Vec<LineReport>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn outcome(&self, line: VarId) -> Option<&Outcome> {
        self.lines.iter().find(|l| l.line == line).map(|l| &l.outcome)
    }
}

/// One gate's contribution to a target line's exponent, recorded while
/// evaluating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub gate_index: usize,
    pub target: VarId,
    pub k: u32,
    pub p: u32,
    /// Product of the gate's control values at the gate's position.
    pub resolved_control: Anf,
    /// Identifies the stretch during which the target stayed in a root-of-NOT
    /// state; a read of the line (collapse) starts a new one.
    pub epoch: usize,
    /// Root order of the epoch once it ended.
    pub epoch_k: u32,
}

/// One uninterrupted root-of-NOT stretch of a target line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epoch {
    pub line: VarId,
    /// The gate that read the line as a control and so collapsed it; `None`
    /// when the stretch lasts to the end of the circuit.
    pub closed_by: Option<usize>,
    /// The line's state when the stretch ended.
    pub state: TargetState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub report: EvalReport,
    pub contributions: Vec<Contribution>,
    /// Indexed by [`Contribution::epoch`].
    pub epochs: Vec<Epoch>,
}

pub fn evaluate(c: &Circuit) -> Result<EvalReport, SymbolicError> {
    trace(c).map(|t| t.report)
}

/// Evaluates and also records every exponent contribution.
pub fn trace(c: &Circuit) -> Result<Trace, SymbolicError> {
    let diags = validate(c);
    if !diags.is_empty() {
        return Err(SymbolicError::Invalid(diags));
    }
    let ids = c.line_ids();
    let index_of = |v: VarId| ids.iter().position(|x| *x == v).expect("validated line");
    let mut states: Vec<LineState> = ids.iter().map(|v| LineState::Pure(Anf::var(*v))).collect();
    let mut epochs: Vec<Option<usize>> = vec![None; ids.len()];
    let mut next_epoch = 0;
    let mut contributions: Vec<Contribution> = Vec::new();
    let mut epoch_log: Vec<Epoch> = Vec::new();

    for (gi, g) in c.gates.iter().enumerate() {
        let mut control = Anf::one();
        for cid in &g.controls {
            let ci = index_of(*cid);
            let value = match &states[ci] {
                LineState::Pure(v) => v.clone(),
                LineState::Tainted(ts) => {
                    let Some(v) = ts.collapsed_value() else {
                        return Err(SymbolicError::TargetInteraction {
                            gate: gi,
                            line: *cid,
                            k: ts.k,
                            e: ts.e.clone(),
                        });
                    };
                    states[ci] = LineState::Pure(v.clone());
                    if let Some(e) = epochs[ci].take() {
                        epoch_log[e].closed_by = Some(gi);
                    }
                    v
                }
            };
            control = control.and(&value);
        }

        let ti = index_of(g.target);
        match &mut states[ti] {
            LineState::Pure(v) if g.is_not_family() => {
                *v = v.xor(&control);
            }
            slot => {
                if let LineState::Pure(v) = slot {
                    let base = v.clone();
                    *slot = LineState::Tainted(TargetState::new(base.clone(), g.k));
                    epochs[ti] = Some(next_epoch);
                    epoch_log.push(Epoch { line: g.target, closed_by: None, state: TargetState::new(base, g.k) });
                    next_epoch += 1;
                }
                let LineState::Tainted(ts) = slot else { unreachable!() };
                ts.absorb(g.k, g.p, &control);
                let epoch = epochs[ti].expect("tainted line has an epoch");
                epoch_log[epoch].state = ts.clone();
                contributions.push(Contribution {
                    gate_index: gi,
                    target: g.target,
                    k: g.k,
                    p: g.p,
                    resolved_control: control,
                    epoch,
                    epoch_k: 0,
                });
            }
        }
    }
    for contribution in &mut contributions {
        contribution.epoch_k = epoch_log[contribution.epoch].state.k;
    }

    let mut report = EvalReport::default();
    for (line, state) in c.lines.iter().zip(states) {
        let outcome = match state {
            LineState::Pure(v) => Outcome::Pure(v),
            LineState::Tainted(ts) => match ts.collapse() {
                Some(f) => Outcome::Collapsed { value: ts.base.xor(&f), base: ts.base, k: ts.k, e: ts.e },
                None => {
                    report.warnings.push(format!(
                        "line `{}` ends in Q_{}^({}) applied to {}; it is not a Boolean update",
                        line.id, ts.k, ts.e, ts.base
                    ));
                    Outcome::Residual { base: ts.base, k: ts.k, e: ts.e }
                }
            },
        };
        report.lines.push(LineReport { line: line.id, role: line.role, outcome });
    }
    Ok(Trace { report, contributions, epochs: epoch_log })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecResult {
    Pass,
    /// `witness` is the first differing point in counting order, when the
    /// number of variables is within the enumeration guard.
    Fail { actual: Anf, witness: Option<Assignment> },
    /// `E_NO_COLLAPSE`: the line does not end in a Boolean state.
    NoCollapse { k: u32, e: MlPoly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecVerdict {
    pub line: VarId,
    pub expected: Anf,
    pub result: SpecResult,
}

impl SpecVerdict {
    pub fn passed(&self) -> bool {
        self.result == SpecResult::Pass
    }
}

/// Variables of `exprs` ordered by line declaration, unknown names last.
fn ordered_vars(c: &Circuit, vars: BTreeSet<VarId>) -> Vec<VarId> {
    let mut out: Vec<VarId> = c.line_ids().into_iter().filter(|v| vars.contains(v)).collect();
    out.extend(vars.into_iter().filter(|v| c.line(*v).is_none()));
    out
}

/// Checks every `spec` statement by canonical ANF equality.
pub fn check_spec(c: &Circuit, guard: usize) -> Result<Vec<SpecVerdict>, SymbolicError> {
    if c.specs.is_empty() {
        return Err(SymbolicError::NoSpecs);
    }
    let report = evaluate(c)?;
    let mut out = Vec::new();
    for (line, expected) in &c.specs {
        let outcome = report.outcome(*line).expect("validated spec line");
        let result = match outcome.value() {
            None => {
                let Outcome::Residual { k, e, .. } = outcome else { unreachable!() };
                SpecResult::NoCollapse { k: *k, e: e.clone() }
            }
            Some(actual) if actual == expected => SpecResult::Pass,
            Some(actual) => {
                let mut vars = actual.vars();
                vars.extend(expected.vars());
                let order = ordered_vars(c, vars);
                let witness = (order.len() <= guard)
                    .then(|| {
                        Assignment::enumerate(&order).find(|p| {
                            actual.eval(p).expect("total point") != expected.eval(p).expect("total point")
                        })
                    })
                    .flatten();
                SpecResult::Fail { actual: actual.clone(), witness }
            }
        };
        out.push(SpecVerdict { line: *line, expected: expected.clone(), result });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Different {
        line: VarId,
        left: String,
        right: String,
        witness: Option<Assignment>,
    },
}

fn rebase_normal(k: u32, e: &MlPoly, to: u32) -> MlPoly {
    e.scale(to / k).reduce_mod(2 * u64::from(to))
}

fn describe(o: &Outcome) -> String {
    match o {
        Outcome::Pure(v) | Outcome::Collapsed { value: v, .. } => v.to_string(),
        Outcome::Residual { base, k, e } => format!("Q_{k}^({e}) |{base}>"),
    }
}

/// Compares two circuits line by line through the normal form of each
/// outcome. Coefficientwise equality mod `2K` is pointwise equality mod `2K`.
pub fn equivalent(c1: &Circuit, c2: &Circuit, guard: usize) -> Result<Equivalence, SymbolicError> {
    let sig = |c: &Circuit| c.lines.iter().map(|l| (l.id, l.role)).collect::<BTreeSet<_>>();
    if sig(c1) != sig(c2) {
        return Err(SymbolicError::LineMismatch(
            "the circuits do not declare the same lines with the same roles".into(),
        ));
    }
    let r1 = evaluate(c1)?;
    let r2 = evaluate(c2)?;
    for l1 in &r1.lines {
        let o1 = &l1.outcome;
        let o2 = r2.outcome(l1.line).expect("same line set");
        let (k1, e1) = o1.normal_form();
        let (k2, e2) = o2.normal_form();
        let k = k1.max(k2);
        let (e1, e2) = (rebase_normal(k1, &e1, k), rebase_normal(k2, &e2, k));
        if e1 != e2 {
            let mut vars = e1.vars();
            vars.extend(e2.vars());
            let order = ordered_vars(c1, vars);
            let m = BigInt::from(2 * u64::from(k));
            let witness = (order.len() <= guard)
                .then(|| {
                    Assignment::enumerate(&order).find(|p| {
                        let a = e1.eval(p).expect("total point").mod_floor(&m);
                        let b = e2.eval(p).expect("total point").mod_floor(&m);
                        a != b
                    })
                })
                .flatten();
            return Ok(Equivalence::Different { line: l1.line, left: describe(o1), right: describe(o2), witness });
        }
    }
    Ok(Equivalence::Equivalent)
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&describe(self))
    }
}

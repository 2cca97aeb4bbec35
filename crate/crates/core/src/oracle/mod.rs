//! Dense state-vector simulation used as numerical ground truth for the
//! symbolic calculus.
//!
//! Qubit order follows line declaration: the first declared line is the most
//! significant bit of the basis index.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::circuit::{validate, Circuit, Gate};
use crate::expr::{Assignment, VarId};
use crate::symbolic::{EvalReport, Outcome};

pub type Cx = Complex64;
pub type Matrix2 = [[Cx; 2]; 2];

/// Default bound on the number of simulated lines.
pub const DEFAULT_SIM_GUARD: usize = 12;

/// Per-amplitude tolerance for comparing simulated and predicted states.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("E_BAD_K: root order k={0} is not a power of two")]
    BadK(u32),
    #[error("E_UNKNOWN_LINE: line `{0}` is not part of the state")]
    UnknownLine(VarId),
    #[error("E_TOO_MANY_LINES: {count} lines exceed the simulation guard of {guard}")]
    TooManyLines { count: usize, guard: usize },
    #[error("invalid circuit: {0}")]
    Invalid(String),
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            OracleError::BadK(_) => "E_BAD_K",
            OracleError::UnknownLine(_) => "E_UNKNOWN_LINE",
            OracleError::TooManyLines { .. } => "E_TOO_MANY_LINES",
            OracleError::Invalid(_) => "E_INVALID",
        }
    }
}

/// `Q^p` for `Q^k = NOT`.
///
/// NOT has eigenvalues `1` and `-1`, so its principal `k`-th root has
/// eigenvalues `1` and `ω = e^{iπ/k}`. Back in the computational basis,
/// `Q^p = ½ [[1+ω^p, 1−ω^p], [1−ω^p, 1+ω^p]]`.
pub fn q_matrix(k: u32, p: i64) -> Result<Matrix2, OracleError> {
    if !k.is_power_of_two() {
        return Err(OracleError::BadK(k));
    }
    let period = 2 * i64::from(k);
    let angle = PI * p.rem_euclid(period) as f64 / f64::from(k);
    let w = Cx::from_polar(1.0, angle);
    let one = Cx::new(1.0, 0.0);
    let diag = (one + w) * 0.5;
    let off = (one - w) * 0.5;
    Ok([[diag, off], [off, diag]])
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Cx::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Matrix2) -> Matrix2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn conjugate(a: &Matrix2) -> Matrix2 {
    [[a[0][0].conj(), a[0][1].conj()], [a[1][0].conj(), a[1][1].conj()]]
}

/// Largest entrywise modulus of `a - b`.
pub fn max_diff(a: &Matrix2, b: &Matrix2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub const IDENTITY: Matrix2 = [
    [Cx { re: 1.0, im: 0.0 }, Cx { re: 0.0, im: 0.0 }],
    [Cx { re: 0.0, im: 0.0 }, Cx { re: 1.0, im: 0.0 }],
];

pub const NOT: Matrix2 = [
    [Cx { re: 0.0, im: 0.0 }, Cx { re: 1.0, im: 0.0 }],
    [Cx { re: 1.0, im: 0.0 }, Cx { re: 0.0, im: 0.0 }],
];

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amps: Vec<Cx>,
    /// Line for each qubit, most significant first.
    pub lines: Vec<VarId>,
}

impl StateVector {
    /// The computational basis state for `input`; lines missing from `input` start at 0.
    pub fn basis(lines: &[VarId], input: &Assignment) -> StateVector {
        let n = lines.len();
        let mut index = 0usize;
        for (i, v) in lines.iter().enumerate() {
            if input.get(*v).unwrap_or(false) {
                index |= 1 << (n - 1 - i);
            }
        }
        let mut amps = vec![Cx::new(0.0, 0.0); 1 << n];
        amps[index] = Cx::new(1.0, 0.0);
        StateVector { amps, lines: lines.to_vec() }
    }

    fn bit_of(&self, v: VarId) -> Result<usize, OracleError> {
        let i = self.lines.iter().position(|x| *x == v).ok_or(OracleError::UnknownLine(v))?;
        Ok(self.lines.len() - 1 - i)
    }

    /// Applies `q_matrix(g.k, g.p)` to the target qubit on the basis states
    /// where every control bit is 1.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<(), OracleError> {
        let m = q_matrix(g.k, i64::from(g.p))?;
        let target = 1usize << self.bit_of(g.target)?;
        let mut control_mask = 0usize;
        for c in &g.controls {
            control_mask |= 1 << self.bit_of(*c)?;
        }
        for i0 in 0..self.amps.len() {
            if i0 & target != 0 || i0 & control_mask != control_mask {
                continue;
            }
            let i1 = i0 | target;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(Cx::norm_sqr).sum::<f64>().sqrt()
    }

    /// One line per basis state `|bits⟩ re im`, skipping amplitudes below 1e-12.
    pub fn dump(&self) -> String {
        let n = self.lines.len();
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            let bits: String = (0..n).rev().map(|b| if i >> b & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(out, "|{bits}⟩ {:.12} {:.12}", tidy(a.re), tidy(a.im)).expect("write to string");
        }
        out
    }

    /// Tensor product of single-qubit states, most significant first.
    pub fn product(lines: &[VarId], factors: &[[Cx; 2]]) -> StateVector {
        let mut amps = vec![Cx::new(1.0, 0.0)];
        for f in factors {
            amps = amps.iter().flat_map(|a| [a * f[0], a * f[1]]).collect();
        }
        StateVector { amps, lines: lines.to_vec() }
    }
}

/// Rounds values that would print as `-0.000000000000` to plain zero.
pub(crate) fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

fn check_sim(c: &Circuit, guard: usize) -> Result<(), OracleError> {
    let diags = validate(c);
    if let Some(d) = diags.first() {
        return Err(OracleError::Invalid(d.to_string()));
    }
    if c.lines.len() > guard {
        return Err(OracleError::TooManyLines { count: c.lines.len(), guard });
    }
    Ok(())
}

/// Runs the circuit on the basis state given by `input`.
pub fn simulate(c: &Circuit, input: &Assignment, guard: usize) -> Result<StateVector, OracleError> {
    check_sim(c, guard)?;
    let mut s = StateVector::basis(&c.line_ids(), input);
    for g in &c.gates {
        s.apply_gate(g)?;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CrossCheck {
    Pass { inputs: usize },
    Fail { input: Assignment, max_deviation: f64 },
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        matches!(self, CrossCheck::Pass { .. })
    }
}

/// Single-qubit state predicted for a line at one input point.
fn predicted_qubit(outcome: &Outcome, point: &Assignment) -> [Cx; 2] {
    let zero = Cx::new(0.0, 0.0);
    let one = Cx::new(1.0, 0.0);
    let basis = |b: bool| if b { [zero, one] } else { [one, zero] };
    match outcome {
        Outcome::Pure(v) | Outcome::Collapsed { value: v, .. } => basis(v.eval(point).expect("total point")),
        Outcome::Residual { base, k, e } => {
            let m = BigInt::from(2 * u64::from(*k));
            let power = e.eval(point).expect("total point").mod_floor(&m).to_i64().expect("small residue");
            let q = q_matrix(*k, power).expect("power of two");
            let b = basis(base.eval(point).expect("total point"));
            [q[0][0] * b[0] + q[0][1] * b[1], q[1][0] * b[0] + q[1][1] * b[1]]
        }
    }
}

/// Confirms `report` against simulation on every basis input: the final state
/// must equal the product of the per-line predictions within
/// [`AMPLITUDE_TOLERANCE`] per amplitude.
pub fn cross_check(c: &Circuit, report: &EvalReport, guard: usize) -> Result<CrossCheck, OracleError> {
    check_sim(c, guard)?;
    let lines = c.line_ids();
    let mut inputs = 0;
    for point in Assignment::enumerate(&lines) {
        let simulated = simulate(c, &point, guard)?;
        let factors: Vec<[Cx; 2]> = lines
            .iter()
            .map(|v| match report.outcome(*v) {
                Some(o) => predicted_qubit(o, &point),
                None => [Cx::new(f64::NAN, 0.0); 2],
            })
            .collect();
        let predicted = StateVector::product(&lines, &factors);
        let deviation = simulated
            .amps
            .iter()
            .zip(&predicted.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if deviation.is_nan() || deviation > AMPLITUDE_TOLERANCE {
            return Ok(CrossCheck::Fail { input: point, max_deviation: deviation });
        }
        inputs += 1;
    }
    Ok(CrossCheck::Pass { inputs })
}

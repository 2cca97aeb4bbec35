//! The `cnq` command-line front end.
//!
//! [`main_with_args`] parses arguments and [`run`] executes a parsed
//! [`RunConfig`]; both write to caller-supplied streams and return the exit
//! code, so the whole front end is testable in-process.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::circuit::{gate_count, parse, render, Circuit, GateCounts, Role};
use crate::expr::{Anf, Assignment, MlPoly, VarId, DEFAULT_ENUM_GUARD};
use crate::optimize::{self, merge_pass, Change};
use crate::oracle::{self, cross_check, simulate, CrossCheck, OracleError, DEFAULT_SIM_GUARD};
use crate::random::{random_circuit, seeded_rng, RandomConfig};
use crate::symbolic::{check_spec, equivalent, evaluate, trace, Equivalence, EvalReport, Outcome, SpecResult, SymbolicError};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const TARGET_INTERACTION: i32 = 3;
    pub const GUARD: i32 = 4;
}

/// `simulate` without `--input` enumerates every basis input up to this many lines.
pub const SIMULATE_ENUMERATION_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One JSON document on standard output.
    Structured,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "cnq", version, about = "Symbolic evaluation, verification and optimization of controlled root-of-NOT circuits")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest variable count enumerated when searching for a witness.
    #[arg(long, default_value_t = DEFAULT_ENUM_GUARD, global = true)]
    pub guard_enum: usize,
    /// Largest line count the dense simulator accepts.
    #[arg(long, default_value_t = DEFAULT_SIM_GUARD, global = true)]
    pub guard_sim: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Print the symbolic value of every line.
    Eval { file: PathBuf },
    /// Check the circuit's `spec` statements.
    Verify { file: PathBuf },
    /// Print final state vectors from the dense simulator.
    Simulate {
        file: PathBuf,
        /// One bit per line in declaration order, e.g. `0110`.
        #[arg(long)]
        input: Option<String>,
    },
    /// Cross-check the symbolic result against simulation on every basis input.
    Check { file: PathBuf },
    /// Merge same-control gates and print the optimized circuit.
    Optimize { file: PathBuf },
    /// Decide whether two circuits act identically.
    Equiv { left: PathBuf, right: PathBuf },
    /// Self-test on seeded random circuits.
    #[command(hide = true)]
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Verify { .. } => "verify",
            Command::Simulate { .. } => "simulate",
            Command::Check { .. } => "check",
            Command::Optimize { .. } => "optimize",
            Command::Equiv { .. } => "equiv",
            Command::Fuzz { .. } => "fuzz",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineStatus {
    Pure,
    Collapsed,
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDoc {
    pub line: VarId,
    pub role: Role,
    pub status: LineStatus,
    /// The Boolean output; absent for residual lines.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anf: Option<Anf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Anf>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<MlPoly>,
}

impl LineDoc {
    fn new(line: VarId, role: Role, outcome: &Outcome) -> LineDoc {
        let mut doc = LineDoc { line, role, status: LineStatus::Pure, anf: None, base: None, k: None, e: None };
        match outcome {
            Outcome::Pure(v) => doc.anf = Some(v.clone()),
            Outcome::Collapsed { value, base, k, e } => {
                doc.status = LineStatus::Collapsed;
                doc.anf = Some(value.clone());
                doc.base = Some(base.clone());
                doc.k = Some(*k);
                doc.e = Some(e.clone());
            }
            Outcome::Residual { base, k, e } => {
                doc.status = LineStatus::Residual;
                doc.base = Some(base.clone());
                doc.k = Some(*k);
                doc.e = Some(e.clone());
            }
        }
        doc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticDoc {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl DiagnosticDoc {
    fn location(&self) -> String {
        match (&self.file, self.line, self.column) {
            (Some(f), Some(l), Some(c)) => format!("{f}:{l}:{c}: "),
            (Some(f), _, _) => format!("{f}: "),
            _ => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub line: VarId,
    pub expected: Anf,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<Anf>,
    /// First failing input, e.g. `a=0 b=1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub basis: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub input: String,
    pub amplitudes: Vec<Amplitude>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckDoc {
    pub inputs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizedDoc {
    pub circuit: String,
    pub gate_counts: GateCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivDoc {
    pub equivalent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<VarId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzDoc {
    pub seed: u64,
    pub circuits: usize,
    pub failures: Vec<String>,
}

/// The structured report: one document per invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    /// Symbolic outcome per line (of the first circuit for `equiv`).
    pub lines: Vec<LineDoc>,
    pub diagnostics: Vec<DiagnosticDoc>,
    /// One entry per input circuit.
    pub gate_counts: Vec<GateCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specs: Option<Vec<SpecDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<StateDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckDoc>,
    /// Rewrites made by `optimize`; gate indices are 0-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub changes: Option<Vec<Change>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimized: Option<OptimizedDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<FuzzDoc>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_owned(),
            verdict: Verdict::Pass,
            lines: Vec::new(),
            diagnostics: Vec::new(),
            gate_counts: Vec::new(),
            specs: None,
            states: None,
            cross_check: None,
            changes: None,
            optimized: None,
            equivalence: None,
            fuzz: None,
        }
    }
}

/// A failed step: exit code plus diagnostics.
struct Failure {
    exit: i32,
    diagnostics: Vec<DiagnosticDoc>,
}

impl Failure {
    fn one(exit: i32, code: &str, message: impl Into<String>, file: Option<&Path>, at: Option<(usize, usize)>) -> Failure {
        Failure {
            exit,
            diagnostics: vec![DiagnosticDoc {
                severity: Severity::Error,
                code: code.to_owned(),
                message: message.into(),
                file: file.map(|f| f.display().to_string()),
                line: at.map(|a| a.0),
                column: at.map(|a| a.1),
            }],
        }
    }
}

/// The error text without its leading `CODE: `, which diagnostics print separately.
fn message_of(e: &SymbolicError) -> String {
    let text = e.to_string();
    match text.strip_prefix(e.code()).and_then(|rest| rest.strip_prefix(": ")) {
        Some(rest) => rest.to_owned(),
        None => text,
    }
}

/// A parsed input file with its source text kept for error positions.
struct Source {
    path: PathBuf,
    text: String,
    circuit: Circuit,
}

impl Source {
    fn load(path: &Path) -> Result<Source, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::one(exit::USAGE, "E_IO", e.to_string(), Some(path), None))?;
        let circuit = parse(&text)
            .map_err(|e| Failure::one(exit::USAGE, e.code(), e.message, Some(path), Some((e.line, e.column))))?;
        Ok(Source { path: path.to_owned(), text, circuit })
    }

    /// 1-based position of the `index`-th (0-based) gate statement.
    fn gate_position(&self, index: usize) -> Option<(usize, usize)> {
        self.text
            .lines()
            .enumerate()
            .filter_map(|(n, raw)| {
                let code = raw.split('#').next().unwrap_or("");
                let first = code.split_whitespace().next()?;
                if first == "line" || first == "spec" {
                    return None;
                }
                let column = raw.len() - raw.trim_start().len() + 1;
                Some((n + 1, column))
            })
            .nth(index)
    }

    fn symbolic_failure(&self, e: SymbolicError) -> Failure {
        let path = Some(self.path.as_path());
        match &e {
            SymbolicError::Invalid(diags) => Failure {
                exit: exit::USAGE,
                diagnostics: diags
                    .iter()
                    .map(|d| {
                        let at = d.gate.and_then(|g| self.gate_position(g));
                        Failure::one(exit::USAGE, d.code.as_str(), d.to_string(), path, at).diagnostics.remove(0)
                    })
                    .collect(),
            },
            SymbolicError::TargetInteraction { gate, .. } => {
                Failure::one(exit::TARGET_INTERACTION, e.code(), message_of(&e), path, self.gate_position(*gate))
            }
            SymbolicError::LineMismatch(_) | SymbolicError::NoSpecs => {
                Failure::one(exit::USAGE, e.code(), message_of(&e), path, None)
            }
        }
    }

    fn oracle_failure(&self, e: OracleError) -> Failure {
        let code = match e {
            OracleError::TooManyLines { .. } => exit::GUARD,
            _ => exit::USAGE,
        };
        Failure::one(code, e.code(), e.to_string(), Some(&self.path), None)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                exit::USAGE
            } else {
                let _ = write!(out, "{rendered}");
                exit::PASS
            }
        }
    }
}

/// Executes one command. The report goes to `out`, diagnostics to `err`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut report = Report::new(cfg.command.name());
    let mut text = String::new();
    let result = match &cfg.command {
        Command::Eval { file } => cmd_eval(file, &mut report, &mut text),
        Command::Verify { file } => cmd_verify(cfg, file, &mut report, &mut text),
        Command::Simulate { file, input } => cmd_simulate(cfg, file, input.as_deref(), &mut report, &mut text),
        Command::Check { file } => cmd_check(cfg, file, &mut report, &mut text),
        Command::Optimize { file } => cmd_optimize(cfg, file, &mut report, &mut text),
        Command::Equiv { left, right } => cmd_equiv(cfg, left, right, &mut report, &mut text),
        Command::Fuzz { seed, count } => cmd_fuzz(cfg, *seed, *count, &mut report, &mut text),
    };
    let code = match result {
        Ok(()) if report.verdict == Verdict::Pass => exit::PASS,
        Ok(()) => exit::FAIL,
        Err(failure) => {
            report.verdict = Verdict::Error;
            report.diagnostics.extend(failure.diagnostics);
            failure.exit
        }
    };
    for d in &report.diagnostics {
        let kind = match d.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let _ = writeln!(err, "{}{kind}: {}: {}", d.location(), d.code, d.message);
    }
    let written = match cfg.format {
        Format::Text => out.write_all(text.as_bytes()),
        Format::Structured => serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(std::io::Error::other)
            .and_then(|()| writeln!(out)),
    };
    if written.is_err() {
        return exit::USAGE;
    }
    code
}

fn outcome_text(line: VarId, o: &Outcome) -> String {
    match o {
        Outcome::Pure(v) => v.display_factored(Some(line)),
        Outcome::Collapsed { value, k, e, .. } => {
            format!("{}  [collapsed: K={k}, E={e}]", value.display_factored(Some(line)))
        }
        Outcome::Residual { base, k, e } => format!("Q_{k}^E |{}>  [residual: K={k}, E={e}]", base),
    }
}

fn push_eval(report: &mut Report, text: &mut String, c: &Circuit, eval: &EvalReport, path: &Path) {
    for l in &eval.lines {
        let _ = writeln!(text, "{} ({}): {}", l.line, l.role, outcome_text(l.line, &l.outcome));
        report.lines.push(LineDoc::new(l.line, l.role, &l.outcome));
    }
    for w in &eval.warnings {
        report.diagnostics.push(DiagnosticDoc {
            severity: Severity::Warning,
            code: "W_RESIDUAL".into(),
            message: w.clone(),
            file: Some(path.display().to_string()),
            line: None,
            column: None,
        });
    }
    let _ = writeln!(text, "gates: {}", gate_count(c));
}

fn cmd_eval(file: &Path, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let src = Source::load(file)?;
    report.gate_counts.push(gate_count(&src.circuit));
    let tr = trace(&src.circuit).map_err(|e| src.symbolic_failure(e))?;
    push_eval(report, text, &src.circuit, &tr.report, file);
    for epoch in &tr.epochs {
        if let (Some(gate), Some(value)) = (epoch.closed_by, epoch.state.collapsed_value()) {
            let _ = writeln!(
                text,
                "note: {} collapsed to {} before gate #{} [K={}, E={}]",
                epoch.line,
                value.display_factored(Some(epoch.line)),
                gate + 1,
                epoch.state.k,
                epoch.state.e
            );
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, file: &Path, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let src = Source::load(file)?;
    report.gate_counts.push(gate_count(&src.circuit));
    let verdicts = check_spec(&src.circuit, cfg.guard_enum).map_err(|e| src.symbolic_failure(e))?;
    let eval = evaluate(&src.circuit).map_err(|e| src.symbolic_failure(e))?;
    report.lines = eval.lines.iter().map(|l| LineDoc::new(l.line, l.role, &l.outcome)).collect();
    let order = src.circuit.line_ids();
    let mut specs = Vec::new();
    for v in verdicts {
        let shown = v.expected.display_factored(Some(v.line));
        let mut doc = SpecDoc {
            line: v.line,
            expected: v.expected.clone(),
            verdict: if v.passed() { Verdict::Pass } else { Verdict::Fail },
            actual: None,
            witness: None,
            code: None,
        };
        match &v.result {
            SpecResult::Pass => {
                let _ = writeln!(text, "spec {} = {}: PASS", v.line, shown);
            }
            SpecResult::Fail { actual, witness } => {
                let _ = write!(text, "spec {} = {}: FAIL, got {}", v.line, shown, actual.display_factored(Some(v.line)));
                match witness {
                    Some(w) => {
                        let _ = writeln!(text, "; witness {}", w.display_in(&order));
                    }
                    None => {
                        let _ = writeln!(text, "; too many variables to search for a witness");
                    }
                }
                doc.actual = Some(actual.clone());
                doc.witness = witness.as_ref().map(|w| w.display_in(&order));
            }
            SpecResult::NoCollapse { k, e } => {
                let _ = writeln!(text, "spec {} = {}: FAIL, E_NO_COLLAPSE (K={k}, E={e})", v.line, shown);
                doc.code = Some("E_NO_COLLAPSE".into());
            }
        }
        if !v.passed() {
            report.verdict = Verdict::Fail;
        }
        specs.push(doc);
    }
    report.specs = Some(specs);
    let _ = writeln!(text, "verdict: {}", if report.verdict == Verdict::Pass { "PASS" } else { "FAIL" });
    Ok(())
}

/// Reads `--input` bits, first character for the first declared line.
fn parse_input(bits: &str, lines: &[VarId], file: &Path) -> Result<Assignment, Failure> {
    let bad = |msg: String| Failure::one(exit::USAGE, "E_USAGE", msg, Some(file), None);
    if bits.chars().count() != lines.len() {
        return Err(bad(format!("--input needs {} bits, one per line, got {:?}", lines.len(), bits)));
    }
    lines
        .iter()
        .zip(bits.chars())
        .map(|(v, ch)| match ch {
            '0' => Ok((*v, false)),
            '1' => Ok((*v, true)),
            other => Err(bad(format!("--input bit {other:?} is not 0 or 1"))),
        })
        .collect()
}

fn state_doc(input: &Assignment, order: &[VarId], state: &oracle::StateVector) -> StateDoc {
    let n = order.len();
    let amplitudes = state
        .amps
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, a)| Amplitude {
            basis: (0..n).map(|b| if i >> (n - 1 - b) & 1 == 1 { '1' } else { '0' }).collect(),
            re: oracle::tidy(a.re),
            im: oracle::tidy(a.im),
        })
        .collect();
    StateDoc { input: input.display_in(order), amplitudes }
}

fn cmd_simulate(
    cfg: &RunConfig,
    file: &Path,
    input: Option<&str>,
    report: &mut Report,
    text: &mut String,
) -> Result<(), Failure> {
    let src = Source::load(file)?;
    let c = &src.circuit;
    report.gate_counts.push(gate_count(c));
    if let Ok(eval) = evaluate(c) {
        report.lines = eval.lines.iter().map(|l| LineDoc::new(l.line, l.role, &l.outcome)).collect();
    }
    let order = c.line_ids();
    let inputs: Vec<Assignment> = match input {
        Some(bits) => vec![parse_input(bits, &order, file)?],
        None if order.len() <= SIMULATE_ENUMERATION_LIMIT => Assignment::enumerate(&order).collect(),
        None => {
            return Err(Failure::one(
                exit::USAGE,
                "E_USAGE",
                format!("{} lines: pass --input to choose one basis input", order.len()),
                Some(file),
                None,
            ))
        }
    };
    let mut states = Vec::new();
    for point in &inputs {
        let state = simulate(c, point, cfg.guard_sim).map_err(|e| src.oracle_failure(e))?;
        let _ = writeln!(text, "input {}:", point.display_in(&order));
        for row in state.dump().lines() {
            let _ = writeln!(text, "  {row}");
        }
        states.push(state_doc(point, &order, &state));
    }
    report.states = Some(states);
    Ok(())
}

fn cmd_check(cfg: &RunConfig, file: &Path, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let src = Source::load(file)?;
    report.gate_counts.push(gate_count(&src.circuit));
    let eval = evaluate(&src.circuit).map_err(|e| src.symbolic_failure(e))?;
    push_eval(report, text, &src.circuit, &eval, file);
    match cross_check(&src.circuit, &eval, cfg.guard_sim).map_err(|e| src.oracle_failure(e))? {
        CrossCheck::Pass { inputs } => {
            let _ = writeln!(text, "cross-check PASS on {inputs} basis inputs");
            report.cross_check = Some(CrossCheckDoc { inputs, failing_input: None, max_deviation: None });
        }
        CrossCheck::Fail { input, max_deviation } => {
            let shown = input.display_in(&src.circuit.line_ids());
            let _ = writeln!(text, "cross-check FAIL at {shown}: deviation {max_deviation:e}");
            report.verdict = Verdict::Fail;
            report.cross_check =
                Some(CrossCheckDoc { inputs: 0, failing_input: Some(shown), max_deviation: Some(max_deviation) });
        }
    }
    Ok(())
}

fn cmd_optimize(cfg: &RunConfig, file: &Path, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let src = Source::load(file)?;
    let c = &src.circuit;
    let eval = evaluate(c).map_err(|e| src.symbolic_failure(e))?;
    report.lines = eval.lines.iter().map(|l| LineDoc::new(l.line, l.role, &l.outcome)).collect();
    let (after, changes) = merge_pass(c).map_err(|e| src.symbolic_failure(e))?;
    let summary = optimize::report(c, &after, &changes);
    let rendered = render(&after);
    text.push_str(&rendered);
    text.push('\n');
    for row in summary.to_string().lines() {
        let _ = writeln!(text, "# {row}");
    }
    // The pass is sound by construction; confirm it anyway so a bug can never
    // hand back a different circuit silently.
    if equivalent(c, &after, cfg.guard_enum).map_err(|e| src.symbolic_failure(e))? != Equivalence::Equivalent {
        report.verdict = Verdict::Fail;
        let _ = writeln!(text, "# internal error: the optimized circuit is not equivalent");
    }
    report.gate_counts.push(summary.before);
    report.changes = Some(summary.changes);
    report.optimized = Some(OptimizedDoc { circuit: rendered, gate_counts: summary.after });
    Ok(())
}

fn cmd_equiv(cfg: &RunConfig, left: &Path, right: &Path, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let l = Source::load(left)?;
    let r = Source::load(right)?;
    report.gate_counts.push(gate_count(&l.circuit));
    report.gate_counts.push(gate_count(&r.circuit));
    let eval = evaluate(&l.circuit).map_err(|e| l.symbolic_failure(e))?;
    evaluate(&r.circuit).map_err(|e| r.symbolic_failure(e))?;
    report.lines = eval.lines.iter().map(|x| LineDoc::new(x.line, x.role, &x.outcome)).collect();
    let verdict = equivalent(&l.circuit, &r.circuit, cfg.guard_enum).map_err(|e| match e {
        SymbolicError::LineMismatch(_) => Failure::one(exit::USAGE, e.code(), message_of(&e), Some(right), None),
        other => l.symbolic_failure(other),
    })?;
    match verdict {
        Equivalence::Equivalent => {
            let _ = writeln!(text, "EQUIVALENT");
            report.equivalence =
                Some(EquivDoc { equivalent: true, line: None, left: None, right: None, witness: None });
        }
        Equivalence::Different { line, left: lv, right: rv, witness } => {
            let order = l.circuit.line_ids();
            let _ = write!(text, "DIFFERENT on line {line}: {lv} vs {rv}");
            match &witness {
                Some(w) => {
                    let _ = writeln!(text, "; witness {}", w.display_in(&order));
                }
                None => {
                    let _ = writeln!(text);
                }
            }
            report.verdict = Verdict::Fail;
            report.equivalence = Some(EquivDoc {
                equivalent: false,
                line: Some(line),
                left: Some(lv),
                right: Some(rv),
                witness: witness.as_ref().map(|w| w.display_in(&order)),
            });
        }
    }
    Ok(())
}

/// One random circuit through every consistency check.
fn fuzz_one(c: &Circuit, cfg: &RunConfig) -> Result<(), String> {
    let eval = evaluate(c).map_err(|e| e.to_string())?;
    let check = |c: &Circuit, eval: &EvalReport, what: &str| match cross_check(c, eval, cfg.guard_sim) {
        Ok(CrossCheck::Pass { .. }) => Ok(()),
        Ok(CrossCheck::Fail { input, max_deviation }) => {
            Err(format!("{what}: oracle disagrees at {input} by {max_deviation:e}"))
        }
        Err(e) => Err(e.to_string()),
    };
    check(c, &eval, "input")?;
    let (after, _) = merge_pass(c).map_err(|e| e.to_string())?;
    if after.gates.len() > c.gates.len() {
        return Err("optimizer added gates".into());
    }
    if equivalent(c, &after, cfg.guard_enum).map_err(|e| e.to_string())? != Equivalence::Equivalent {
        return Err("optimizer changed the circuit's action".into());
    }
    check(&after, &evaluate(&after).map_err(|e| e.to_string())?, "optimized")?;
    let (again, changes) = merge_pass(&after).map_err(|e| e.to_string())?;
    if again != after || !changes.is_empty() {
        return Err("optimizer is not idempotent".into());
    }
    Ok(())
}

fn cmd_fuzz(cfg: &RunConfig, seed: u64, count: usize, report: &mut Report, text: &mut String) -> Result<(), Failure> {
    let mut rng = seeded_rng(seed);
    let gen = RandomConfig::default();
    let mut failures = Vec::new();
    for i in 0..count {
        let c = random_circuit(&mut rng, &gen);
        if let Err(msg) = fuzz_one(&c, cfg) {
            let _ = writeln!(text, "circuit {i}: {msg}\n{}", render(&c));
            failures.push(format!("circuit {i}: {msg}"));
        }
    }
    let _ = writeln!(text, "fuzz seed {seed}: {count} circuits, {} failures", failures.len());
    if !failures.is_empty() {
        report.verdict = Verdict::Fail;
    }
    report.fuzz = Some(FuzzDoc { seed, circuits: count, failures });
    Ok(())
}

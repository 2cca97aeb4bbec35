use std::collections::BTreeSet;
use std::fmt;

use crate::expr::{Anf, ExprError, VarId};

use super::{check_k, Circuit, DiagCode, Gate, Line, Role};

/// A parse failure with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// `None` for plain syntax errors (`E_SYNTAX`).
    pub diag: Option<DiagCode>,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        self.diag.map_or("E_SYNTAX", DiagCode::as_str)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.code(), self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    /// Byte offset within the source line.
    at: usize,
}

/// Splits on whitespace, with `->` always a word of its own.
fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            if let Some(s) = start.take() {
                out.push(Word { text: &line[s..i], at: s });
            }
            i += 1;
        } else if line[i..].starts_with("->") {
            if let Some(s) = start.take() {
                out.push(Word { text: &line[s..i], at: s });
            }
            out.push(Word { text: "->", at: i });
            i += 2;
        } else {
            start.get_or_insert(i);
            i += 1;
        }
    }
    if let Some(s) = start {
        out.push(Word { text: &line[s..], at: s });
    }
    out
}

struct Ctx<'a> {
    circuit: Circuit,
    declared: BTreeSet<VarId>,
    lineno: usize,
    src_line: &'a str,
}

impl<'a> Ctx<'a> {
    fn err(&self, diag: Option<DiagCode>, at: usize, message: impl Into<String>) -> ParseError {
        let column = self.src_line[..at.min(self.src_line.len())].chars().count() + 1;
        ParseError { diag, line: self.lineno, column, message: message.into() }
    }

    fn syntax(&self, at: usize, message: impl Into<String>) -> ParseError {
        self.err(None, at, message)
    }

    fn name(&self, w: Word<'_>) -> Result<VarId, ParseError> {
        VarId::new(w.text).map_err(|_| self.syntax(w.at, format!("`{}` is not a valid line name", w.text)))
    }

    fn declared_line(&self, w: Word<'_>) -> Result<VarId, ParseError> {
        let id = self.name(w)?;
        if !self.declared.contains(&id) {
            return Err(self.err(Some(DiagCode::UndeclaredLine), w.at, format!("line `{id}` is not declared")));
        }
        Ok(id)
    }

    /// `k_at` and `p_at` locate the root order and power for error messages.
    fn gate(
        &mut self,
        (k_at, p_at): (usize, usize),
        k: u32,
        p: i64,
        controls: &[Word<'_>],
        target: Word<'_>,
    ) -> Result<(), ParseError> {
        if let Err(msg) = check_k(k) {
            return Err(self.err(Some(DiagCode::BadK), k_at, msg));
        }
        if p.rem_euclid(2 * i64::from(k)) == 0 {
            return Err(self.err(
                Some(DiagCode::ZeroPower),
                p_at,
                format!("power p={p} is 0 mod {}, the gate is the identity", 2 * k),
            ));
        }
        let target_id = self.declared_line(target)?;
        let mut ids = Vec::with_capacity(controls.len());
        for w in controls {
            let id = self.declared_line(*w)?;
            if id == target_id {
                return Err(self.err(
                    Some(DiagCode::SelfControl),
                    w.at,
                    format!("line `{id}` cannot control its own gate"),
                ));
            }
            if ids.contains(&id) {
                return Err(self.err(Some(DiagCode::DuplicateControl), w.at, format!("control `{id}` repeated")));
            }
            ids.push(id);
        }
        self.circuit.gates.push(Gate::new(k, p, ids, target_id));
        Ok(())
    }

    fn statement(&mut self, ws: &[Word<'_>]) -> Result<(), ParseError> {
        let kw = ws[0];
        let args = &ws[1..];
        match kw.text {
            "line" => self.line_decl(kw, args),
            "spec" => self.spec(kw, args),
            "not" => match args {
                [t] => self.gate((kw.at, kw.at), 1, 1, &[], *t),
                _ => Err(self.syntax(kw.at, "expected `not <line>`")),
            },
            "cnot" => match args {
                [c, t] => self.gate((kw.at, kw.at), 1, 1, &[*c], *t),
                _ => Err(self.syntax(kw.at, "expected `cnot <control> <line>`")),
            },
            "ccx" => match args {
                [cs @ .., t] if cs.len() >= 2 => self.gate((kw.at, kw.at), 1, 1, cs, *t),
                _ => Err(self.syntax(kw.at, "expected `ccx <c1> <c2> ... <line>`")),
            },
            "v" | "v*" | "w" | "w*" => {
                let (k, p) = match kw.text {
                    "v" => (2, 1),
                    "v*" => (2, -1),
                    "w" => (4, 1),
                    _ => (4, -1),
                };
                let (controls, target) = self.arrow(kw, args)?;
                self.gate((kw.at, kw.at), k, p, controls, target)
            }
            "q" => {
                let (k, p, rest) = self.q_params(kw, args)?;
                let (controls, target) = self.arrow(kw, rest)?;
                self.gate((args[0].at, args[1].at), k, p, controls, target)
            }
            other => Err(self.syntax(kw.at, format!("unknown statement `{other}`"))),
        }
    }

    fn arrow<'w>(&self, kw: Word<'_>, args: &'w [Word<'w>]) -> Result<(&'w [Word<'w>], Word<'w>), ParseError> {
        match args {
            [controls @ .., arrow, target] if arrow.text == "->" => {
                if let Some(w) = controls.iter().find(|w| w.text == "->") {
                    return Err(self.syntax(w.at, "unexpected `->`"));
                }
                Ok((controls, *target))
            }
            _ => Err(self.syntax(kw.at, format!("expected `{} <controls...> -> <line>`", kw.text))),
        }
    }

    fn q_params<'w>(&self, kw: Word<'_>, args: &'w [Word<'w>]) -> Result<(u32, i64, &'w [Word<'w>]), ParseError> {
        let [kw_k, kw_p, rest @ ..] = args else {
            return Err(self.syntax(kw.at, "expected `q k=<K> p=<P> ... -> <line>`"));
        };
        let k = kw_k
            .text
            .strip_prefix("k=")
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| self.syntax(kw_k.at, format!("expected `k=<positive integer>`, found `{}`", kw_k.text)))?;
        let p = kw_p
            .text
            .strip_prefix("p=")
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or_else(|| self.syntax(kw_p.at, format!("expected `p=<integer>`, found `{}`", kw_p.text)))?;
        Ok((k, p, rest))
    }

    fn line_decl(&mut self, kw: Word<'_>, args: &[Word<'_>]) -> Result<(), ParseError> {
        let (name, role) = match args {
            [n] => (*n, Role::Control),
            [n, r] if r.text == "target" => (*n, Role::Target),
            [n, r] if r.text == "control" => (*n, Role::Control),
            [_, r] => return Err(self.syntax(r.at, format!("expected `target`, found `{}`", r.text))),
            _ => return Err(self.syntax(kw.at, "expected `line <name> [target]`")),
        };
        let id = self.name(name)?;
        if !self.declared.insert(id) {
            return Err(self.err(Some(DiagCode::DuplicateLine), name.at, format!("line `{id}` declared twice")));
        }
        self.circuit.lines.push(Line { id, role });
        Ok(())
    }

    fn spec(&mut self, kw: Word<'_>, args: &[Word<'_>]) -> Result<(), ParseError> {
        let (name, eq) = match args {
            [n, eq, ..] if eq.text == "=" || eq.text.starts_with('=') => (*n, *eq),
            _ => return Err(self.syntax(kw.at, "expected `spec <line> = <expression>`")),
        };
        let id = self.declared_line(name)?;
        if self.circuit.role_of(id) != Some(Role::Target) {
            return Err(self.err(
                Some(DiagCode::SpecNotTarget),
                name.at,
                format!("`{id}` is not a target line"),
            ));
        }
        if self.circuit.specs.contains_key(&id) {
            return Err(self.syntax(name.at, format!("second spec for line `{id}`")));
        }
        let expr_at = eq.at + 1;
        let expr_src = &self.src_line[expr_at..];
        let expr: Anf = expr_src.parse().map_err(|e| match e {
            ExprError::Syntax { offset, message } => self.syntax(expr_at + offset, message),
            other => self.syntax(expr_at, other.to_string()),
        })?;
        for v in expr.vars() {
            if !self.declared.contains(&v) {
                let at = expr_src.find(v.as_str()).map_or(expr_at, |o| expr_at + o);
                return Err(self.err(Some(DiagCode::UndeclaredLine), at, format!("line `{v}` is not declared")));
            }
        }
        self.circuit.specs.insert(id, expr);
        Ok(())
    }
}

/// Parses `.cnq` text. Sugar forms are desugared into canonical [`Gate`]s.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut ctx = Ctx { circuit: Circuit::default(), declared: BTreeSet::new(), lineno: 0, src_line: "" };
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        ctx.lineno = i + 1;
        ctx.src_line = content;
        let ws = words(content);
        if ws.is_empty() {
            continue;
        }
        ctx.statement(&ws)?;
    }
    if ctx.circuit.lines.is_empty() {
        return Err(ParseError {
            diag: Some(DiagCode::NoLines),
            line: 1,
            column: 1,
            message: "a circuit needs at least one `line` declaration".into(),
        });
    }
    Ok(ctx.circuit)
}

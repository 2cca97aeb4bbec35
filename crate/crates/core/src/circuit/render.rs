use std::fmt::Write as _;

use super::{Circuit, Gate, Role};

fn join(ids: &[crate::expr::VarId]) -> String {
    ids.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ")
}

/// The statement for one gate, preferring sugar (`cnot`, `v*`, ...) where it exists.
pub fn gate_statement(g: &Gate) -> String {
    let sugar = match (g.k, g.p) {
        (1, 1) => {
            return match g.controls.len() {
                0 => format!("not {}", g.target),
                1 => format!("cnot {} {}", g.controls[0], g.target),
                _ => format!("ccx {} {}", join(&g.controls), g.target),
            }
        }
        (2, 1) => "v",
        (2, 3) => "v*",
        (4, 1) => "w",
        (4, 7) => "w*",
        (k, p) => return arrow(&format!("q k={k} p={p}"), g),
    };
    arrow(sugar, g)
}

fn arrow(head: &str, g: &Gate) -> String {
    if g.controls.is_empty() {
        format!("{head} -> {}", g.target)
    } else {
        format!("{head} {} -> {}", join(&g.controls), g.target)
    }
}

/// Canonical `.cnq` text; `parse(render(c)) == c` for valid circuits.
pub fn render(c: &Circuit) -> String {
    let mut out = String::new();
    for line in &c.lines {
        match line.role {
            Role::Target => writeln!(out, "line {} target", line.id),
            Role::Control => writeln!(out, "line {}", line.id),
        }
        .expect("write to string");
    }
    if !c.gates.is_empty() {
        out.push('\n');
    }
    for g in &c.gates {
        out.push_str(&gate_statement(g));
        out.push('\n');
    }
    if !c.specs.is_empty() {
        out.push('\n');
    }
    for (line, expr) in &c.specs {
        writeln!(out, "spec {line} = {}", expr.display_factored(Some(*line))).expect("write to string");
    }
    out
}

//! Exact symbolic algebra: GF(2) algebraic normal forms for control
//! expressions and multilinear integer polynomials for Q-exponents.

mod anf;
mod mobius;
mod monomial;
mod parse;
mod poly;
mod var;

pub use anf::Anf;
pub use mobius::{mobius_from_values, values_of, DEFAULT_ENUM_GUARD};
pub use monomial::Monomial;
pub use poly::MlPoly;
pub use var::{Assignment, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("E_UNBOUND_VAR: variable `{0}` has no value")]
    UnboundVar(VarId),
    #[error("E_TOO_MANY_VARS: {count} variables exceed the enumeration guard of {guard}")]
    TooManyVars { count: usize, guard: usize },
    #[error("expected {expected} values, found {found}")]
    ValueCount { expected: usize, found: usize },
    #[error("invalid identifier `{0}`")]
    InvalidName(String),
    #[error("E_SYNTAX at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

impl ExprError {
    pub fn code(&self) -> &'static str {
        match self {
            ExprError::UnboundVar(_) => "E_UNBOUND_VAR",
            ExprError::TooManyVars { .. } => "E_TOO_MANY_VARS",
            ExprError::ValueCount { .. } | ExprError::InvalidName(_) | ExprError::Syntax { .. } => {
                "E_SYNTAX"
            }
        }
    }
}

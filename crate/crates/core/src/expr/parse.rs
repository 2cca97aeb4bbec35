//! Recursive-descent parsers for ANF text (`^`, `&`, `0`, `1`, parentheses)
//! and multilinear polynomial text (`+`, `-`, `*`, integers, parentheses).

use num_bigint::BigInt;

use super::{Anf, ExprError, MlPoly, VarId};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Caret,
    Amp,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Caret => "`^`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'^' => Tok::Caret,
            b'&' => Tok::Amp,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_owned())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ExprError> {
        Ok(Parser { toks: lex(src)?, pos: 0, src })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { offset: self.offset(), message: message.into() }
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect_end(&self) -> Result<(), ExprError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of expression")),
        }
    }

    fn ident(&self, name: &str) -> Result<VarId, ExprError> {
        VarId::new(name).map_err(|_| self.error(format!("invalid identifier `{name}`")))
    }

    // xor := and ('^' and)*
    fn anf_xor(&mut self) -> Result<Anf, ExprError> {
        let mut acc = self.anf_and()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            acc = acc.xor(&self.anf_and()?);
        }
        Ok(acc)
    }

    // and := atom ('&' atom)*
    fn anf_and(&mut self) -> Result<Anf, ExprError> {
        let mut acc = self.anf_atom()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            acc = acc.and(&self.anf_atom()?);
        }
        Ok(acc)
    }

    fn anf_atom(&mut self) -> Result<Anf, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let v = self.ident(&name)?;
                self.bump();
                Ok(Anf::var(v))
            }
            Some(Tok::Int(n)) => {
                if n == BigInt::from(0) {
                    self.bump();
                    Ok(Anf::zero())
                } else if n == BigInt::from(1) {
                    self.bump();
                    Ok(Anf::one())
                } else {
                    Err(self.error(format!("only the constants 0 and 1 are allowed, found `{n}`")))
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.anf_xor()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a variable, constant or `(`")),
        }
    }

    // sum := term (('+'|'-') term)*
    fn poly_sum(&mut self) -> Result<MlPoly, ExprError> {
        let mut acc = self.poly_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.poly_term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.poly_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn poly_term(&mut self) -> Result<MlPoly, ExprError> {
        let mut acc = self.poly_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.poly_factor()?;
        }
        Ok(acc)
    }

    fn poly_factor(&mut self) -> Result<MlPoly, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.poly_factor()?)
            }
            Some(Tok::Int(n)) => {
                self.bump();
                Ok(MlPoly::constant(n))
            }
            Some(Tok::Ident(name)) => {
                let v = self.ident(&name)?;
                self.bump();
                Ok(MlPoly::var(v))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.poly_sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

pub(crate) fn parse_anf(src: &str) -> Result<Anf, ExprError> {
    let mut p = Parser::new(src)?;
    let e = p.anf_xor()?;
    p.expect_end()?;
    Ok(e)
}

pub(crate) fn parse_poly(src: &str) -> Result<MlPoly, ExprError> {
    let mut p = Parser::new(src)?;
    let e = p.poly_sum()?;
    p.expect_end()?;
    Ok(e)
}

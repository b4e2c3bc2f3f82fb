//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' nat)?
//! base   := rational | 'i' | ident | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! `/` is only legal inside a rational literal. Whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{GaussRat, MPoly, VarUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("variable `{name}` at offset {pos} exceeds the declared dimension")]
    DimensionOverflow { pos: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::DimensionOverflow { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {}
        }
        let t = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, t));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    universe: &'a Arc<VarUniverse>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a natural-number exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MPoly, ParseError> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= BigRational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => return self.err("zero denominator"),
                        _ => return self.err("`/` is only allowed inside a rational literal p/q"),
                    }
                }
                Ok(MPoly::constant(self.universe, GaussRat::real(value)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(MPoly::constant(self.universe, GaussRat::i()));
                }
                match self.universe.index_of(&name) {
                    Some(ix) => Ok(MPoly::var(self.universe, ix)),
                    None if looks_like_variable(&name, self.universe) => {
                        Err(ParseError::DimensionOverflow { pos: start, name })
                    }
                    None => Err(ParseError::UnknownIdentifier { pos: start, name }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Slash) => self.err("`/` is only allowed inside a rational literal p/q"),
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// `name` has the shape of a variable of `universe` with an index past its end.
fn looks_like_variable(name: &str, universe: &VarUniverse) -> bool {
    let split = |s: &str| {
        let digits = s.trim_start_matches(|c: char| c.is_ascii_alphabetic());
        (s[..s.len() - digits.len()].to_string(), digits.to_string())
    };
    let (prefix, digits) = split(name);
    !digits.is_empty()
        && digits.chars().all(|c| c.is_ascii_digit())
        && (0..universe.len()).any(|i| split(universe.name(i)).0 == prefix)
}

/// Parses `text` into a polynomial over `universe`.
pub fn parse_poly(text: &str, universe: &Arc<VarUniverse>) -> Result<MPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), universe };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        if let Some(Tok::Slash) = p.peek() {
            return p.err("`/` is only allowed inside a rational literal p/q");
        }
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a constant such as `1/2`, `-i` or `(3-2*i)`.
pub fn parse_scalar(text: &str) -> Result<GaussRat, ParseError> {
    let u = Arc::new(VarUniverse::new(0, 0, Vec::new()).expect("empty universe"));
    let p = parse_poly(text, &u)?;
    Ok(p.as_constant().unwrap_or_else(GaussRat::zero))
}

/// Renders a scalar so that [`parse_scalar`] reads it back.
pub fn format_scalar(c: &GaussRat) -> String {
    c.to_string()
}

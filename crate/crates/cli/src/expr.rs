//! Recursive-descent parser for map expressions.
//!
//! ```text
//! expr  := sum
//! sum   := prod (("+" | "-") prod)*
//! prod  := unary (("*" | "/") unary)*
//! unary := "-" unary | atom ("^" nat)?
//! atom  := nat | "y" | "x" | "v" | "t" | "(" expr ")"
//! ```
//!
//! `x`, `y` and `v` all name the map's variable; one expression may use only one
//! of them. `t` is the transcendental of `F_p(t)` and is unknown elsewhere.

use std::fmt;

use a1h::field::{FieldDescriptor, FieldElement};
use a1h::poly::{Poly, RationalFunc};
use num_bigint::BigInt;

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// Byte offset of the offending input and what was expected there.
    Syntax { position: usize, message: String },
    UnknownSymbol { position: usize, symbol: String },
    ZeroDenominator { position: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnknownSymbol { .. } => "UnknownSymbol",
            ParseError::ZeroDenominator { .. } => "ZeroDenominator",
        }
    }

    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::UnknownSymbol { position, .. }
            | ParseError::ZeroDenominator { position } => *position,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => write!(f, "syntax error at {position}: {message}"),
            ParseError::UnknownSymbol { position, symbol } => write!(f, "unknown symbol `{symbol}` at {position}"),
            ParseError::ZeroDenominator { position } => write!(f, "division by zero at {position}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // digits immediately followed by a letter would be implicit multiplication
                if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "expected operator (implicit multiplication is not supported)".into(),
                    });
                }
                out.push((start, Tok::Nat(s[start..i].parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = s[i..].chars().next().unwrap();
                return Err(ParseError::Syntax { position: i, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    k: &'a FieldDescriptor,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    var: Option<char>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(t) => format!("{t:?}"),
        };
        ParseError::Syntax { position: self.offset(), message: format!("expected {what}, found {found}") }
    }

    fn constant(&self, c: FieldElement) -> RationalFunc {
        RationalFunc::from_poly(Poly::constant(self.k, c, 'y'))
    }

    fn sum(&mut self) -> Result<RationalFunc, ParseError> {
        let mut acc = self.prod()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.prod()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.prod()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prod(&mut self) -> Result<RationalFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| ParseError::ZeroDenominator { position: at })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunc, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let e = usize::try_from(n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError::Syntax {
                    position: at,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                })?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.expected("natural-number exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalFunc, ParseError> {
        let at = self.offset();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                Ok(self.constant(self.k.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "t" => match self.k.t() {
                        Some(t) => Ok(self.constant(t)),
                        None => Err(ParseError::UnknownSymbol { position: at, symbol: name }),
                    },
                    "x" | "y" | "v" => {
                        let c = name.chars().next().unwrap();
                        match self.var {
                            Some(v) if v != c => Err(ParseError::UnknownSymbol { position: at, symbol: name }),
                            _ => {
                                self.var = Some(c);
                                Ok(RationalFunc::from_poly(Poly::x(self.k, 'y')))
                            }
                        }
                    }
                    _ => Err(ParseError::UnknownSymbol { position: at, symbol: name }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.expected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.expected("number, variable or `(`")),
        }
    }
}

/// A parsed expression and the variable it was written in (`y` if none).
pub fn parse_with_var(text: &str, k: &FieldDescriptor) -> Result<(RationalFunc, char), ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { k, toks, pos: 0, end: text.len(), var: None };
    let f = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.expected("operator or end of input"));
    }
    let var = p.var.unwrap_or('y');
    Ok((f.with_var(var), var))
}

/// Parses `text` into a reduced rational function over `k`.
pub fn parse_expression(text: &str, k: &FieldDescriptor) -> Result<RationalFunc, ParseError> {
    parse_with_var(text, k).map(|(f, _)| f)
}

/// Parses a constant expression (no map variable) into an element of `k`.
pub fn parse_constant(text: &str, k: &FieldDescriptor) -> Result<FieldElement, ParseError> {
    let toks = tokenize(text)?;
    if let Some((at, Tok::Ident(name))) = toks.iter().find(|(_, t)| matches!(t, Tok::Ident(n) if n != "t")) {
        return Err(ParseError::UnknownSymbol { position: *at, symbol: name.clone() });
    }
    let f = parse_expression(text, k)?;
    // no variable occurred, so both parts are constants
    Ok(k.div(&f.num().coeff(0), &f.den().coeff(0)).expect("nonzero denominator"))
}

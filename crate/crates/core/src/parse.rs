//! Polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INTEGER)*
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! `^` binds tightest, then unary minus, then `*` and `/`, then `+` and `-`;
//! all binary operators are left-associative. Juxtaposition is not
//! multiplication: `2X` is an error. Division is only allowed by a nonzero
//! constant, which is how rationals such as `1/2` are written.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{Polynomial, VarContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
}

/// Parse failure tagged with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at offset {}: {msg}", self.offset),
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier `{name}` at offset {}", self.offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn syntax(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError { offset, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
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
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a VarContext,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let (_, at) = self.bump();
                    let rhs = self.unary()?;
                    match rhs.constant_value() {
                        Some(c) if c == BigRational::from_integer(0.into()) => {
                            return Err(syntax(at, "division by zero"));
                        }
                        Some(c) => acc = acc.scale(&c.recip()),
                        None => return Err(syntax(at, "division by a non-constant expression")),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump().0 {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| syntax(at, "exponent too large"))?;
                    base = base.pow(e);
                }
                t => return Err(syntax(at, format!("expected a non-negative integer exponent, found {t}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ctx, BigRational::from_integer(n))),
            Tok::Ident(name) => match self.ctx.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ctx, i)),
                None => Err(ParseError { offset: at, kind: ParseErrorKind::UnknownIdentifier(name) }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump().0 {
                    Tok::RParen => Ok(inner),
                    t => Err(syntax(close, format!("expected `)`, found {t}"))),
                }
            }
            t => Err(syntax(at, format!("unexpected {t}"))),
        }
    }
}

/// Parse `text` as a polynomial in the variables of `ctx`.
pub fn parse_expression(text: &str, ctx: &VarContext) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, ctx };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t => Err(syntax(p.offset(), format!("unexpected {t}"))),
    }
}

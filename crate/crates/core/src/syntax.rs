//! Recursive-descent parser for group word expressions.
//!
//! ```text
//! expr    := factor*                      concatenation (whitespace optional)
//! factor  := atom ('^' int)*
//! atom    := symbol | '1' | '[' expr (',' expr)+ ']' | '(' expr ')' | cycle
//! symbol  := letter int?                  a0, a-1, t, x, x2, b
//! cycle   := '(' digits ')' | '(' int (','|' ') int ... ')'
//! ```
//!
//! Commutators are left-normed with `[u, v] = u^-1 v^-1 u v`. A parenthesis
//! whose content starts with a digit is a permutation cycle, e.g. `(123)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Symbol { name: char, index: Option<i64> },
    /// A permutation cycle on points numbered from 1.
    Cycle(Vec<u32>),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    Commutator(Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Identity => write!(f, "1"),
            Expr::Symbol { name, index: None } => write!(f, "{name}"),
            Expr::Symbol { name, index: Some(i) } => write!(f, "{name}{i}"),
            Expr::Cycle(points) => {
                let sep = if points.iter().any(|&p| p > 9) { " " } else { "" };
                let body = points.iter().map(u32::to_string).collect::<Vec<_>>().join(sep);
                write!(f, "({body})")
            }
            Expr::Product(parts) => {
                let body = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
                write!(f, "({body})")
            }
            Expr::Power(base, k) => write!(f, "{base}^{k}"),
            Expr::Commutator(parts) => {
                let body = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
                write!(f, "[{body}]")
            }
        }
    }
}

/// Evaluation target for parsed expressions.
pub trait Interpret {
    type Value: Clone;

    fn identity(&self) -> Self::Value;
    fn symbol(&self, name: char, index: Option<i64>) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn inv(&self, a: &Self::Value) -> Result<Self::Value>;

    fn cycle(&self, points: &[u32]) -> Result<Self::Value> {
        let _ = points;
        Err(Error::UnknownSymbol("permutation cycle".into()))
    }

    fn pow(&self, a: &Self::Value, k: i64) -> Result<Self::Value> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    fn commutator(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        let ai = self.inv(a)?;
        let bi = self.inv(b)?;
        let left = self.mul(&ai, &bi)?;
        let right = self.mul(a, b)?;
        self.mul(&left, &right)
    }
}

impl Expr {
    pub fn eval<I: Interpret>(&self, ctx: &I) -> Result<I::Value> {
        match self {
            Expr::Identity => Ok(ctx.identity()),
            Expr::Symbol { name, index } => ctx.symbol(*name, *index),
            Expr::Cycle(points) => ctx.cycle(points),
            Expr::Product(parts) => {
                let mut acc = ctx.identity();
                for part in parts {
                    acc = ctx.mul(&acc, &part.eval(ctx)?)?;
                }
                Ok(acc)
            }
            Expr::Power(base, k) => ctx.pow(&base.eval(ctx)?, *k),
            Expr::Commutator(parts) => {
                let mut iter = parts.iter();
                let mut acc = match iter.next() {
                    Some(first) => first.eval(ctx)?,
                    None => return Ok(ctx.identity()),
                };
                for next in iter {
                    acc = ctx.commutator(&acc, &next.eval(ctx)?)?;
                }
                Ok(acc)
            }
        }
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", ch as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = Vec::new();
        while let Some(ch) = self.peek() {
            if matches!(ch, b',' | b']' | b')') {
                break;
            }
            parts.push(self.factor()?);
        }
        Ok(match parts.len() {
            0 => Expr::Identity,
            1 => parts.pop().unwrap(),
            _ => Expr::Product(parts),
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.signed_int()?.ok_or_else(|| self.error("expected exponent"))?;
            base = Expr::Power(Box::new(base), k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let ch = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        match ch {
            b'[' => {
                self.pos += 1;
                let mut parts = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                self.expect(b']')?;
                if parts.len() < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                Ok(Expr::Commutator(parts))
            }
            b'(' => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return self.cycle();
                }
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            b'1' => {
                self.pos += 1;
                Ok(Expr::Identity)
            }
            c if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let index = self.symbol_index()?;
                Ok(Expr::Symbol { name: c as char, index })
            }
            _ => Err(self.error(&format!("unexpected character `{}`", ch as char))),
        }
    }

    /// Digits (optionally signed, optionally after `_`) glued to a letter.
    fn symbol_index(&mut self) -> Result<Option<i64>> {
        let start = self.pos;
        let mut p = self.pos;
        if self.src.get(p) == Some(&b'_') {
            p += 1;
        }
        let sign_at = p;
        if self.src.get(p) == Some(&b'-') {
            p += 1;
        }
        if !self.src.get(p).is_some_and(|c| c.is_ascii_digit()) {
            if p > start && self.src.get(start) == Some(&b'_') {
                return Err(self.error("expected index after `_`"));
            }
            return Ok(None);
        }
        while self.src.get(p).is_some_and(|c| c.is_ascii_digit()) {
            p += 1;
        }
        let text = std::str::from_utf8(&self.src[sign_at..p]).expect("ascii");
        self.pos = p;
        text.parse().map(Some).map_err(|_| self.error("index out of range"))
    }

    fn signed_int(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        let start = self.pos;
        let mut p = self.pos;
        if matches!(self.src.get(p), Some(b'-') | Some(b'+')) {
            p += 1;
        }
        let digits = p;
        while self.src.get(p).is_some_and(|c| c.is_ascii_digit()) {
            p += 1;
        }
        if p == digits {
            return Ok(None);
        }
        self.pos = p;
        let text = std::str::from_utf8(&self.src[start..p]).expect("ascii");
        text.trim_start_matches('+').parse().map(Some).map_err(|_| self.error("integer out of range"))
    }

    fn cycle(&mut self) -> Result<Expr> {
        let start = self.pos;
        let end = self.src[start..]
            .iter()
            .position(|&c| c == b')')
            .map(|o| start + o)
            .ok_or_else(|| self.error("unterminated cycle"))?;
        let body = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        let points: Vec<u32> = if body.contains(|c: char| c == ',' || c.is_whitespace()) {
            body.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| self.error("bad cycle entry")))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| self.error("bad cycle entry")))
                .collect::<Result<_>>()?
        };
        if points.iter().any(|&p| p == 0) {
            return Err(self.error("cycle points are numbered from 1"));
        }
        self.pos = end + 1;
        Ok(Expr::Cycle(points))
    }
}

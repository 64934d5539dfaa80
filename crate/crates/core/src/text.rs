//! Parsing of the canonical polynomial text formats.
//!
//! One small expression grammar covers both layers: `t` is the generator of
//! F_p[t] and `x` the outer variable, so `t^4+4t+1`, `2*(t+2)^4` and
//! `x^3-(t^2+1)*x+(t-1)` all parse with the same code. Multiplication may be
//! written with `*` or by juxtaposition (`4t`, `2(t+2)`), and `1`
//! coefficients may be omitted.

use crate::bivar::XPoly;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(d) = it.peek().and_then(|c| c.to_digit(10)) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or_else(|| Error::Parse("integer literal overflow".into()))?;
                    it.next();
                }
                out.push(Tok::Int(v));
            }
            't' | 'x' => {
                out.push(Tok::Var(c));
                it.next();
            }
            '+' => {
                out.push(Tok::Plus);
                it.next();
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                it.next();
            }
            '*' => {
                out.push(Tok::Star);
                it.next();
            }
            '^' => {
                out.push(Tok::Caret);
                it.next();
            }
            '(' => {
                out.push(Tok::Open);
                it.next();
            }
            ')' => {
                out.push(Tok::Close);
                it.next();
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                // juxtaposition: 4t, 2(t+2), t(t+1)x ...
                Some(Tok::Var(_)) | Some(Tok::Open) | Some(Tok::Int(_)) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<XPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<XPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    if e > 4096 {
                        return Err(Error::Parse(format!("exponent {e} too large")));
                    }
                    let mut acc = XPoly::new(
                        self.field.clone(),
                        vec![Poly::one(&self.field)],
                    );
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    return Ok(acc);
                }
                _ => return Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<XPoly> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(XPoly::new(
                self.field.clone(),
                vec![Poly::new(
                    self.field.clone(),
                    vec![self.field.elem_from_u64(v % self.field.characteristic())],
                )],
            )),
            Some(Tok::Var('t')) => Ok(XPoly::new(self.field.clone(), vec![Poly::gen(&self.field)])),
            Some(Tok::Var('x')) => Ok(XPoly::new(
                self.field.clone(),
                vec![Poly::zero(&self.field), Poly::one(&self.field)],
            )),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression in t and x into an XPoly over F_p[t].
pub fn parse_xpoly(field: &FieldSpec, s: &str) -> Result<XPoly> {
    if !field.is_prime_field() {
        return Err(Error::Parse("text format is defined over prime fields".into()));
    }
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        field: field.clone(),
    };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses an element of F_p[t]; rejects input mentioning x.
pub fn parse_poly(field: &FieldSpec, s: &str) -> Result<Poly> {
    let xp = parse_xpoly(field, s)?;
    match xp.degree_x() {
        None => Ok(Poly::zero(field)),
        Some(0) => Ok(xp.coeff_x(0)),
        Some(_) => Err(Error::Parse(format!(
            "'{s}' involves x but an element of F_p[t] was expected"
        ))),
    }
}

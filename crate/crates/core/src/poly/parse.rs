//! Expression parser for polynomials.
//!
//! Accepts `+ - * / ^`, parentheses, implicit multiplication (`3ad(c^2-b^2)x^2yz`),
//! `⊗` as a multiplication sign, bracketed extension-field elements `[c0,c1]`
//! and named constants. Names are matched longest first, so `x10` is a single
//! variable when it is declared. Division is only allowed by constants.

use crate::error::{Error, Result};
use crate::field::Field;

use super::MultiPoly;

/// Variable names (their order fixes the ring) and named constants.
#[derive(Clone, Debug)]
pub struct Symbols<E> {
    pub vars: Vec<String>,
    pub consts: Vec<(String, E)>,
}

impl<E> Symbols<E> {
    pub fn new(vars: Vec<String>) -> Self {
        Symbols { vars, consts: Vec::new() }
    }

    pub fn with_const(mut self, name: &str, value: E) -> Self {
        self.consts.push((name.to_string(), value));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Elem(String),
    Var(usize),
    Const(usize),
    Op(char),
}

fn tokenize<E>(s: &str, syms: &Symbols<E>) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c == '[' {
            let start = i;
            while i < chars.len() && chars[i] != ']' {
                i += 1;
            }
            if i == chars.len() {
                return Err(Error::Parse(format!("unclosed `[` in `{s}`")));
            }
            i += 1;
            toks.push(Tok::Elem(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else if c == '⊗' || c == '·' {
            toks.push(Tok::Op('*'));
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let rest: String = chars[i..].iter().collect();
            let names = syms.vars.iter().enumerate().map(|(k, v)| (v, Tok::Var(k)));
            let consts = syms.consts.iter().enumerate().map(|(k, (v, _))| (v, Tok::Const(k)));
            let (name, tok) = names
                .chain(consts)
                .filter(|(v, _)| rest.starts_with(v.as_str()))
                .max_by_key(|(v, _)| v.len())
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown symbol at `{}`",
                        rest.chars().take(8).collect::<String>()
                    ))
                })?;
            i += name.chars().count();
            toks.push(tok);
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(toks)
}

struct Parser<'a, F: Field> {
    field: &'a F,
    syms: &'a Symbols<F::Elem>,
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<F::Elem>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(self.field, &t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(self.field, &t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<F::Elem>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = acc.mul(self.field, &f)?;
            } else if self.eat('/') {
                let f = self.unary()?;
                let c = match (f.len(), f.leading()) {
                    (0, _) => self.field.zero(),
                    (1, Some((m, c))) if m.degree() == 0 => c.clone(),
                    _ => return Err(Error::Parse("division by a non-constant".into())),
                };
                let inv = self.field.inv(&c).ok_or_else(|| Error::Parse("division by zero".into()))?;
                acc = acc.scale(self.field, &inv);
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Elem(_) | Tok::Var(_) | Tok::Const(_) | Tok::Op('('))
            ) {
                let f = self.power()?;
                acc = acc.mul(self.field, &f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<F::Elem>> {
        if self.eat('-') {
            Ok(self.unary()?.neg(self.field))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly<F::Elem>> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?,
                other => return Err(Error::Parse(format!("expected an exponent, found {other:?}"))),
            };
            self.pos += 1;
            return Ok(base.pow(self.field, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<F::Elem>> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        let field = self.field;
        let n = self.nvars;
        match tok {
            Tok::Num(s) | Tok::Elem(s) => {
                Ok(MultiPoly::constant(field, n, field.parse_elem(&s)?))
            }
            Tok::Var(k) => Ok(MultiPoly::var(field, n, k)),
            Tok::Const(k) => Ok(MultiPoly::constant(field, n, self.syms.consts[k].1.clone())),
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

/// Parse `text` as a polynomial in `syms.vars`.
pub fn parse_poly<F: Field>(
    field: &F,
    text: &str,
    syms: &Symbols<F::Elem>,
) -> Result<MultiPoly<F::Elem>> {
    let toks = tokenize(text, syms)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { field, syms, toks, pos: 0, nvars: syms.vars.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{text}`")));
    }
    Ok(out)
}

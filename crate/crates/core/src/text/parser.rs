//! Expressions over a session's variables.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER | IDENT | "(" expr ")"
//! ```
//!
//! Products are evaluated left to right in the session ring, so
//! `d1*x1 - x1*d1` is `1` in the Weyl algebra. Division is allowed by any
//! expression free of `∂` (and of the ring variables in the commutative
//! case); the numerator must be free of `∂` as well.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::{Monomial, RationalFunction, VarTable};
use crate::weyl::{Operator, RingKind};

use super::TextError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str, line: usize) -> Result<Vec<(Tok, usize)>, TextError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(TextError::Syntax {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Names and ring of a session, everything the parser needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub vars: VarTable,
    pub ring: RingKind,
    /// Extra names for `∂_i`, e.g. `dx`.
    pub dalias: HashMap<String, usize>,
}

impl Context {
    pub fn new(vars: VarTable, ring: RingKind) -> Self {
        Context {
            vars,
            ring,
            dalias: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.vars.n()
    }

    pub fn nvars(&self) -> usize {
        self.vars.nvars()
    }

    /// Index of `∂_i` if `name` denotes a derivation symbol.
    pub fn dindex(&self, name: &str) -> Option<usize> {
        if self.ring != RingKind::Weyl {
            return None;
        }
        if let Some(&i) = self.dalias.get(name) {
            return Some(i);
        }
        let rest = name.strip_prefix('d')?;
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
            return None;
        }
        let k: usize = rest.parse().ok()?;
        (1..=self.n()).contains(&k).then(|| k - 1)
    }

    /// Printed name of `∂_i`.
    pub fn dname(&self, i: usize) -> String {
        let mut aliases: Vec<(&String, &usize)> = self.dalias.iter().filter(|(_, &v)| v == i).collect();
        aliases.sort();
        match aliases.first() {
            Some((name, _)) => (*name).clone(),
            None => format!("d{}", i + 1),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    ctx: &'a Context,
}

type Val = Operator;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> TextError {
        TextError::Syntax {
            line: self.line,
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn scalar(&self, r: RationalFunction) -> Val {
        Operator::from_coeff(self.ctx.n(), r)
    }

    fn expr(&mut self) -> Result<Val, TextError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val, TextError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                let rhs = self.unary()?;
                acc = acc.mul_in(&rhs, self.ctx.ring);
            } else if self.eat_op('/') {
                let col = self.col();
                let rhs = self.unary()?;
                acc = self.divide(acc, rhs, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, num: Val, den: Val, col: usize) -> Result<Val, TextError> {
        let as_scalar = |v: &Val| -> Option<RationalFunction> {
            if v.is_zero() {
                return Some(RationalFunction::zero(self.ctx.nvars()));
            }
            if v.len() == 1 && v.degree() == 0 {
                return Some(v.coeff(&Monomial::one(self.ctx.n())));
            }
            None
        };
        let d = as_scalar(&den).ok_or_else(|| TextError::Syntax {
            line: self.line,
            col,
            msg: "division by an expression containing derivations or ring variables".into(),
        })?;
        let inv = d.inv().map_err(|_| TextError::Syntax {
            line: self.line,
            col,
            msg: "division by zero".into(),
        })?;
        match self.ctx.ring {
            RingKind::Commutative => Ok(num.scale_left(&inv)),
            RingKind::Weyl => {
                let n = as_scalar(&num).ok_or_else(|| TextError::Syntax {
                    line: self.line,
                    col,
                    msg: "the numerator of a division must be free of derivations; write (1/q)*P".into(),
                })?;
                Ok(self.scalar(n.mul(&inv)))
            }
        }
    }

    fn unary(&mut self) -> Result<Val, TextError> {
        if self.eat_op('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val, TextError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    let mut acc = Operator::one(self.ctx.n(), self.ctx.nvars());
                    for _ in 0..e {
                        acc = acc.mul_in(&base, self.ctx.ring);
                    }
                    Ok(acc)
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Val, TextError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(self.scalar(RationalFunction::constant(
                    self.ctx.nvars(),
                    BigRational::from_integer(v),
                )))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.ident(&name, col)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn ident(&self, name: &str, col: usize) -> Result<Val, TextError> {
        let ctx = self.ctx;
        if let Some(i) = ctx.dindex(name) {
            return Ok(Operator::d(ctx.n(), ctx.nvars(), i));
        }
        match ctx.vars.index_of(name) {
            Some(i) if ctx.ring == RingKind::Commutative && ctx.vars.is_derivation(i) => {
                Ok(Operator::d(ctx.n(), ctx.nvars(), i))
            }
            Some(i) => Ok(self.scalar(RationalFunction::var(ctx.nvars(), i))),
            None => Err(TextError::UnknownIdentifier {
                line: self.line,
                col,
                name: name.to_string(),
            }),
        }
    }
}

/// Parses an operator (or a commutative polynomial) on line `line`.
pub fn parse_operator(src: &str, ctx: &Context, line: usize) -> Result<Operator, TextError> {
    let toks = tokenize(src, line)?;
    if toks.is_empty() {
        return Err(TextError::Syntax {
            line,
            col: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: src.chars().count() + 1,
        ctx,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an element of the coefficient field.
pub fn parse_scalar(src: &str, ctx: &Context, line: usize) -> Result<RationalFunction, TextError> {
    let v = parse_operator(src, ctx, line)?;
    if v.is_zero() {
        return Ok(RationalFunction::zero(ctx.nvars()));
    }
    if v.len() == 1 && v.degree() == 0 {
        return Ok(v.coeff(&Monomial::one(ctx.n())));
    }
    Err(TextError::Syntax {
        line,
        col: 1,
        msg: "expected a scalar, found derivations or ring variables".into(),
    })
}

/// Parses a monomial `d1^2*d2` (or `X*Y` in the commutative case).
pub fn parse_monomial(src: &str, ctx: &Context, line: usize) -> Result<Monomial, TextError> {
    let v = parse_operator(src, ctx, line)?;
    match v.leading() {
        Some((m, c)) if v.len() == 1 && c.is_one() => Ok(m.clone()),
        _ => Err(TextError::Syntax {
            line,
            col: 1,
            msg: format!("`{}` is not a monomial", src.trim()),
        }),
    }
}

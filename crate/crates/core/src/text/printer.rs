//! Canonical text for polynomials, rational functions and operators.
//!
//! Output is accepted by the parser and printing is a fixed point of
//! parse-then-print. Operator terms come in descending degrevlex order and
//! compound coefficients are parenthesized without inner spaces, e.g.
//! `d1*d2 + (s24/(x1-x2))*d1 - (s23/(x1-x2))*d2`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::field::{Monomial, QPoly, RationalFunction, VarTable};
use crate::matrix::Matrix;
use crate::weyl::{Operator, RingKind};

use super::parser::Context;

fn power_product(m: &Monomial, name: impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(i)),
            _ => parts.push(format!("{}^{}", name(i), e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `|c| * m` without sign.
fn scaled(c: &BigRational, mono: String, is_one: bool) -> String {
    let a = c.abs();
    if is_one {
        rational(&a)
    } else if a.is_one() {
        mono
    } else if a.is_integer() {
        format!("{}*{}", a.numer(), mono)
    } else {
        format!("({})*{}", rational(&a), mono)
    }
}

/// A polynomial with terms in descending degrevlex; `sep` goes around the
/// binary signs.
fn poly_with(p: &QPoly, vars: &VarTable, sep: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let body = scaled(c, power_product(m, |i| vars.name(i).to_string()), m.is_one());
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(&format!("{sep}-{sep}")),
            (_, false) => out.push_str(&format!("{sep}+{sep}")),
        }
        out.push_str(&body);
    }
    out
}

/// A polynomial as it appears at top level, `x^2 - 2*x*y + 1`.
pub fn print_poly(p: &QPoly, vars: &VarTable) -> String {
    poly_with(p, vars, " ")
}

fn is_atomic_factor(p: &QPoly) -> bool {
    // a lone variable power or a positive integer
    p.len() == 1 && {
        let (m, c) = &p.terms()[0];
        (m.is_one() && c.is_integer() && c.is_positive())
            || (c.is_one() && m.support().count() == 1)
    }
}

/// A rational function in compact form, `-s23/(x1-x2)`.
pub fn print_rf(f: &RationalFunction, vars: &VarTable) -> String {
    if f.is_polynomial() {
        return poly_with(&f.num(), vars, "");
    }
    // the scale is split so that both sides carry integer coefficients
    let s = f.scale_factor();
    let num = f.primitive_num().to_rational().scale(&BigRational::from_integer(s.numer().clone()));
    let den = f.primitive_den().to_rational().scale(&BigRational::from_integer(s.denom().clone()));
    let num_s = poly_with(&num, vars, "");
    let num_s = if num.len() > 1 { format!("({num_s})") } else { num_s };
    let den_s = poly_with(&den, vars, "");
    let den_s = if is_atomic_factor(&den) {
        den_s
    } else {
        format!("({den_s})")
    };
    format!("{num_s}/{den_s}")
}

fn is_negative(f: &RationalFunction) -> bool {
    f.scale_factor().is_negative()
}

/// An operator, or a commutative polynomial with coefficients in the field.
pub fn print_operator(p: &Operator, ctx: &Context) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let name = |i: usize| match ctx.ring {
        RingKind::Weyl => ctx.dname(i),
        RingKind::Commutative => ctx.vars.name(i).to_string(),
    };
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = is_negative(c);
        let c = if neg { c.neg() } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let cs = print_rf(&c, &ctx.vars);
        if m.is_one() {
            if c.is_polynomial() && c.num().len() > 1 {
                out.push_str(&format!("({cs})"));
            } else {
                out.push_str(&cs);
            }
        } else {
            let ms = power_product(m, name);
            if c.is_one() {
                out.push_str(&ms);
            } else if cs.contains(['+', '-', '/']) {
                out.push_str(&format!("({cs})*{ms}"));
            } else {
                out.push_str(&format!("{cs}*{ms}"));
            }
        }
    }
    out
}

/// A monomial of the ring, `d1^2*d2` or `X*Y`.
pub fn print_monomial(m: &Monomial, ctx: &Context) -> String {
    match ctx.ring {
        RingKind::Weyl => power_product(m, |i| ctx.dname(i)),
        RingKind::Commutative => power_product(m, |i| ctx.vars.name(i).to_string()),
    }
}

/// Matrix rows, entries separated by ` | `.
pub fn print_matrix_rows(a: &Matrix, vars: &VarTable) -> Vec<String> {
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .map(|e| print_rf(e, vars))
                .collect::<Vec<_>>()
                .join(" | ")
        })
        .collect()
}

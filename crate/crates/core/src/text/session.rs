//! Session files: variables, an order ideal, operators and matrices.
//!
//! ```text
//! # running example
//! ring: weyl
//! vars: x y
//! order: 1, d1
//! gen P1: d1^2 + ((3*x-y)/(x^2-x*y))*d1 + 1/(x^2-x*y)
//! gen P2: d1*d2 + ((x+y)/(y^2-x*y))*d1
//!     + 1/(y^2-x*y)
//! basis: 1, d1
//! matrix 1:
//!   0 | 1
//!   -1/(x^2-x*y) | (y-3*x)/(x^2-x*y)
//! ```
//!
//! A record starts in column one as `key: value` or `key NAME: value`.
//! Indented lines continue the previous record; in `matrix` and `gauge`
//! blocks each one is a row of `|`-separated entries. `#` starts a
//! comment. Header records (`ring`, `vars`, `params`, `dvars`) apply to the
//! whole file wherever they appear.

use std::collections::HashMap;

use serde::Serialize;

use crate::connect::{BasisLabel, ConnectionSystem};
use crate::division::BorderPrebasis;
use crate::field::{Monomial, VarTable};
use crate::matrix::Matrix;
use crate::order::OrderIdeal;
use crate::weyl::{Operator, RingKind};

use super::parser::{parse_monomial, parse_operator, parse_scalar, Context};
use super::printer::{print_matrix_rows, print_monomial, print_operator};
use super::TextError;

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub ctx: Context,
    pub order: Option<OrderIdeal>,
    /// Prebasis elements in file order.
    pub gens: Vec<(String, Operator)>,
    /// Other named operators, e.g. inputs to division.
    pub ops: Vec<(String, Operator)>,
    pub basis: Option<BasisLabel>,
    /// `matrices[i]` is the connection (or multiplication) matrix of `∂_{i+1}`.
    pub matrices: Vec<Matrix>,
    pub gauge: Option<Matrix>,
    pub newbasis: Option<BasisLabel>,
    /// A second order ideal, the goal of a change of basis.
    pub target: Option<OrderIdeal>,
}

struct Record {
    line: usize,
    key: String,
    name: Option<String>,
    value: String,
    rows: Vec<(usize, String)>,
}

fn split_records(text: &str) -> Result<Vec<Record>, TextError> {
    let mut out: Vec<Record> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if body.starts_with(char::is_whitespace) {
            let Some(last) = out.last_mut() else {
                return Err(TextError::Semantic {
                    line,
                    msg: "continuation line without a record".into(),
                });
            };
            last.rows.push((line, body.trim().to_string()));
            continue;
        }
        let Some((head, value)) = body.split_once(':') else {
            return Err(TextError::Syntax {
                line,
                col: 1,
                msg: "expected `key: value`".into(),
            });
        };
        let mut words = head.split_whitespace();
        let key = words.next().unwrap_or("").to_string();
        let name = words.next().map(str::to_string);
        if words.next().is_some() {
            return Err(TextError::Syntax {
                line,
                col: 1,
                msg: "too many words before `:`".into(),
            });
        }
        out.push(Record {
            line,
            key,
            name,
            value: value.trim().to_string(),
            rows: Vec::new(),
        });
    }
    Ok(out)
}

fn name_list(value: &str) -> Vec<String> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn reserved(s: &str) -> bool {
    s.strip_prefix('d')
        .is_some_and(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
}

impl Record {
    /// The value with continuation lines appended.
    fn joined(&self) -> String {
        let mut s = self.value.clone();
        for (_, r) in &self.rows {
            s.push(' ');
            s.push_str(r);
        }
        s
    }

    fn require_name(&self) -> Result<String, TextError> {
        self.name.clone().ok_or_else(|| TextError::Semantic {
            line: self.line,
            msg: format!("`{}` needs a name, as in `{} P1: ...`", self.key, self.key),
        })
    }

    fn forbid_name(&self) -> Result<(), TextError> {
        match &self.name {
            Some(_) if !matches!(self.key.as_str(), "matrix") => Err(TextError::Semantic {
                line: self.line,
                msg: format!("`{}` takes no name", self.key),
            }),
            _ => Ok(()),
        }
    }
}

fn parse_order(items: &str, ctx: &Context, line: usize) -> Result<OrderIdeal, TextError> {
    let monos = items
        .split(',')
        .map(|s| parse_monomial(s, ctx, line))
        .collect::<Result<Vec<_>, _>>()?;
    if monos.is_empty() {
        return Err(TextError::Semantic {
            line,
            msg: "empty order ideal".into(),
        });
    }
    OrderIdeal::new(monos).map_err(|e| TextError::Semantic {
        line,
        msg: e.to_string(),
    })
}

fn parse_label(items: &str, ctx: &Context, line: usize) -> BasisLabel {
    let words: Vec<String> = items
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let monos: Result<Vec<Monomial>, _> =
        words.iter().map(|w| parse_monomial(w, ctx, line)).collect();
    match monos {
        Ok(m) => BasisLabel::Monomials(m),
        Err(_) => BasisLabel::Text(words),
    }
}

fn parse_matrix(rec: &Record, ctx: &Context) -> Result<Matrix, TextError> {
    if !rec.value.is_empty() {
        return Err(TextError::Semantic {
            line: rec.line,
            msg: "matrix rows go on the following indented lines".into(),
        });
    }
    let mut rows = Vec::new();
    for (line, text) in &rec.rows {
        let row = text
            .split('|')
            .map(|e| parse_scalar(e, ctx, *line))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Matrix::from_rows(rows).map_err(|e| TextError::Semantic {
        line: rec.line,
        msg: e.to_string(),
    })
}

impl Session {
    pub fn new(ctx: Context) -> Self {
        Session {
            ctx,
            order: None,
            gens: Vec::new(),
            ops: Vec::new(),
            basis: None,
            matrices: Vec::new(),
            gauge: None,
            newbasis: None,
            target: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, TextError> {
        let records = split_records(text)?;
        let mut ring = RingKind::Weyl;
        let mut vars: Option<(usize, Vec<String>)> = None;
        let mut params = Vec::new();
        let mut dvars: Option<(usize, Vec<String>)> = None;
        for rec in &records {
            match rec.key.as_str() {
                "ring" => {
                    rec.forbid_name()?;
                    ring = match rec.value.as_str() {
                        "weyl" => RingKind::Weyl,
                        "commutative" => RingKind::Commutative,
                        other => {
                            return Err(TextError::Semantic {
                                line: rec.line,
                                msg: format!("unknown ring `{other}`, expected weyl or commutative"),
                            })
                        }
                    }
                }
                "vars" => {
                    rec.forbid_name()?;
                    vars = Some((rec.line, name_list(&rec.joined())));
                }
                "params" => {
                    rec.forbid_name()?;
                    params = name_list(&rec.joined());
                }
                "dvars" => {
                    rec.forbid_name()?;
                    dvars = Some((rec.line, name_list(&rec.joined())));
                }
                _ => {}
            }
        }
        let Some((vline, vars)) = vars else {
            return Err(TextError::Missing("vars"));
        };
        for name in vars.iter().chain(params.iter()) {
            if !valid_identifier(name) || reserved(name) {
                return Err(TextError::Semantic {
                    line: vline,
                    msg: format!("`{name}` cannot be a variable name"),
                });
            }
        }
        let table = VarTable::new(vars, params).map_err(|e| TextError::Semantic {
            line: vline,
            msg: e.to_string(),
        })?;
        let mut ctx = Context::new(table, ring);
        if let Some((line, names)) = dvars {
            if names.len() != ctx.n() || ring != RingKind::Weyl {
                return Err(TextError::Semantic {
                    line,
                    msg: "`dvars` needs one name per variable of a Weyl session".into(),
                });
            }
            let mut alias = HashMap::new();
            for (i, name) in names.into_iter().enumerate() {
                if !valid_identifier(&name) || ctx.vars.index_of(&name).is_some() || alias.contains_key(&name) {
                    return Err(TextError::Semantic {
                        line,
                        msg: format!("`{name}` cannot name a derivation"),
                    });
                }
                alias.insert(name, i);
            }
            ctx.dalias = alias;
        }

        let mut s = Session::new(ctx);
        let mut seen = std::collections::HashSet::new();
        for rec in &records {
            let ctx = &s.ctx;
            let once = |key: &str, seen: &mut std::collections::HashSet<String>| {
                if seen.insert(key.to_string()) {
                    Ok(())
                } else {
                    Err(TextError::Semantic {
                        line: rec.line,
                        msg: format!("duplicate `{key}` record"),
                    })
                }
            };
            match rec.key.as_str() {
                "ring" | "vars" | "params" | "dvars" => {}
                "order" => {
                    rec.forbid_name()?;
                    once("order", &mut seen)?;
                    s.order = Some(parse_order(&rec.joined(), ctx, rec.line)?);
                }
                "target" => {
                    rec.forbid_name()?;
                    once("target", &mut seen)?;
                    s.target = Some(parse_order(&rec.joined(), ctx, rec.line)?);
                }
                "gen" | "op" => {
                    let name = rec.require_name()?;
                    once(&format!("{} {}", rec.key, name), &mut seen)?;
                    let p = parse_operator(&rec.joined(), ctx, rec.line)?;
                    if rec.key == "gen" {
                        s.gens.push((name, p));
                    } else {
                        s.ops.push((name, p));
                    }
                }
                "basis" | "newbasis" => {
                    rec.forbid_name()?;
                    once(&rec.key, &mut seen)?;
                    let label = parse_label(&rec.joined(), ctx, rec.line);
                    if rec.key == "basis" {
                        s.basis = Some(label);
                    } else {
                        s.newbasis = Some(label);
                    }
                }
                "matrix" => {
                    let k: usize = rec
                        .name
                        .as_deref()
                        .and_then(|n| n.parse().ok())
                        .filter(|&k| k == s.matrices.len() + 1)
                        .ok_or_else(|| TextError::Semantic {
                            line: rec.line,
                            msg: format!("expected `matrix {}:`", s.matrices.len() + 1),
                        })?;
                    if k > ctx.n() {
                        return Err(TextError::Semantic {
                            line: rec.line,
                            msg: format!("only {} matrices are allowed", ctx.n()),
                        });
                    }
                    let m = parse_matrix(rec, ctx)?;
                    s.matrices.push(m);
                }
                "gauge" => {
                    rec.forbid_name()?;
                    once("gauge", &mut seen)?;
                    s.gauge = Some(parse_matrix(rec, ctx)?);
                }
                other => {
                    return Err(TextError::Semantic {
                        line: rec.line,
                        msg: format!("unknown record `{other}`"),
                    })
                }
            }
        }
        Ok(s)
    }

    /// Canonical text; parsing it gives back an equal session.
    pub fn to_text(&self) -> String {
        let ctx = &self.ctx;
        let mut out = String::new();
        let ring = match ctx.ring {
            RingKind::Weyl => "weyl",
            RingKind::Commutative => "commutative",
        };
        out.push_str(&format!("ring: {ring}\n"));
        out.push_str(&format!("vars: {}\n", ctx.vars.derivation_vars().join(" ")));
        if !ctx.vars.params().is_empty() {
            out.push_str(&format!("params: {}\n", ctx.vars.params().join(" ")));
        }
        if !ctx.dalias.is_empty() {
            let names: Vec<String> = (0..ctx.n()).map(|i| ctx.dname(i)).collect();
            out.push_str(&format!("dvars: {}\n", names.join(" ")));
        }
        if let Some(o) = &self.order {
            out.push_str(&format!("order: {}\n", self.order_text(o)));
        }
        for (name, p) in &self.gens {
            out.push_str(&format!("gen {name}: {}\n", print_operator(p, ctx)));
        }
        for (name, p) in &self.ops {
            out.push_str(&format!("op {name}: {}\n", print_operator(p, ctx)));
        }
        if let Some(b) = &self.basis {
            out.push_str(&format!("basis: {}\n", self.label_text(b)));
        }
        for (k, m) in self.matrices.iter().enumerate() {
            out.push_str(&format!("matrix {}:\n", k + 1));
            out.push_str(&self.rows_text(m));
        }
        if let Some(g) = &self.gauge {
            out.push_str("gauge:\n");
            out.push_str(&self.rows_text(g));
        }
        if let Some(b) = &self.newbasis {
            out.push_str(&format!("newbasis: {}\n", self.label_text(b)));
        }
        if let Some(o) = &self.target {
            out.push_str(&format!("target: {}\n", self.order_text(o)));
        }
        out
    }

    pub fn order_text(&self, o: &OrderIdeal) -> String {
        self.monomials_text(o.elements())
    }

    pub fn monomials_text(&self, ms: &[Monomial]) -> String {
        ms.iter()
            .map(|m| print_monomial(m, &self.ctx))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn label_text(&self, b: &BasisLabel) -> String {
        match b {
            BasisLabel::Monomials(m) => self.monomials_text(m),
            BasisLabel::Text(t) => t.join(", "),
        }
    }

    /// Indented matrix rows, one per line.
    pub fn rows_text(&self, m: &Matrix) -> String {
        print_matrix_rows(m, &self.ctx.vars)
            .into_iter()
            .map(|r| format!("  {r}\n"))
            .collect()
    }

    pub fn operator_text(&self, p: &Operator) -> String {
        print_operator(p, &self.ctx)
    }

    /// The prebasis given by `order` and the `gen` records.
    pub fn prebasis(&self) -> Result<BorderPrebasis, TextError> {
        let order = self.order.clone().ok_or(TextError::Missing("order"))?;
        if self.gens.is_empty() {
            return Err(TextError::Missing("gen"));
        }
        let ops: Vec<Operator> = self.gens.iter().map(|(_, p)| p.clone()).collect();
        BorderPrebasis::from_operators(order, &ops, self.ctx.ring)
            .map_err(|e| TextError::Invalid(e.to_string()))
    }

    /// The connection given by the `matrix` records and `basis`; without a
    /// `basis` record the components are called `f1, f2, ...`.
    pub fn connection(&self) -> Result<ConnectionSystem, TextError> {
        if self.matrices.is_empty() {
            return Err(TextError::Missing("matrix"));
        }
        let label = match &self.basis {
            Some(b) => b.clone(),
            None => BasisLabel::Text((1..=self.matrices[0].rows()).map(|k| format!("f{k}")).collect()),
        };
        ConnectionSystem::new(self.matrices.clone(), label).map_err(|e| TextError::Invalid(e.to_string()))
    }

    /// JSON with every expression in canonical text.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Named {
            name: String,
            expr: String,
        }
        #[derive(Serialize)]
        struct Json {
            ring: RingKind,
            vars: Vec<String>,
            params: Vec<String>,
            #[serde(skip_serializing_if = "Vec::is_empty")]
            dvars: Vec<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            order: Option<Vec<String>>,
            gens: Vec<Named>,
            ops: Vec<Named>,
            #[serde(skip_serializing_if = "Option::is_none")]
            basis: Option<Vec<String>>,
            matrices: Vec<Vec<Vec<String>>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            gauge: Option<Vec<Vec<String>>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            newbasis: Option<Vec<String>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            target: Option<Vec<String>>,
        }
        let ctx = &self.ctx;
        let monos = |o: &OrderIdeal| -> Vec<String> {
            o.elements().iter().map(|m| print_monomial(m, ctx)).collect()
        };
        let label = |b: &BasisLabel| -> Vec<String> {
            match b {
                BasisLabel::Monomials(m) => m.iter().map(|m| print_monomial(m, ctx)).collect(),
                BasisLabel::Text(t) => t.clone(),
            }
        };
        let named = |v: &[(String, Operator)]| -> Vec<Named> {
            v.iter()
                .map(|(n, p)| Named {
                    name: n.clone(),
                    expr: print_operator(p, ctx),
                })
                .collect()
        };
        let json = Json {
            ring: ctx.ring,
            vars: ctx.vars.derivation_vars().to_vec(),
            params: ctx.vars.params().to_vec(),
            dvars: if ctx.dalias.is_empty() {
                Vec::new()
            } else {
                (0..ctx.n()).map(|i| ctx.dname(i)).collect()
            },
            order: self.order.as_ref().map(monos),
            gens: named(&self.gens),
            ops: named(&self.ops),
            basis: self.basis.as_ref().map(label),
            matrices: self.matrices.iter().map(|m| matrix_json(m, &ctx.vars)).collect(),
            gauge: self.gauge.as_ref().map(|g| matrix_json(g, &ctx.vars)),
            newbasis: self.newbasis.as_ref().map(label),
            target: self.target.as_ref().map(monos),
        };
        serde_json::to_value(json).expect("plain data serializes")
    }
}

/// Entries of a matrix as canonical strings.
pub fn matrix_json(m: &Matrix, vars: &VarTable) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|e| super::printer::print_rf(e, vars)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: &str = "\
# two points
vars: x y
order: 1, d1
gen P1: d1^2 + ((3*x-y)/(x*(x-y)))*d1 + 1/(x*(x-y))
gen P2: d1*d2 + ((x+y)/(y*(y-x)))*d1
    + 1/(y*(y-x))
gen P3: d2 + (x/y)*d1 + 1/y
";

    #[test]
    fn reads_records_and_continuations() {
        let s = Session::parse(RUNNING).unwrap();
        assert_eq!(s.gens.len(), 3);
        assert_eq!(s.order.as_ref().unwrap().len(), 2);
        let g = s.prebasis().unwrap();
        assert_eq!(g.border().len(), 3);
    }

    #[test]
    fn canonical_text_round_trips() {
        let s = Session::parse(RUNNING).unwrap();
        let text = s.to_text();
        let again = Session::parse(&text).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_text(), text);
    }

    #[test]
    fn matrices_and_labels() {
        let src = "vars: x\nparams: a\nbasis: I1, I2\nmatrix 1:\n  0 | 1\n  a/x | 1/x\n";
        let s = Session::parse(src).unwrap();
        assert_eq!(s.basis, Some(BasisLabel::Text(vec!["I1".into(), "I2".into()])));
        let c = s.connection().unwrap();
        assert!(c.is_integrable());
        assert_eq!(Session::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn aliases_for_derivations() {
        let src = "vars: x y\ndvars: dx dy\nop f: dx*dy - d1*d2 + dy\n";
        let s = Session::parse(src).unwrap();
        assert_eq!(s.operator_text(&s.ops[0].1), "dy");
        assert_eq!(Session::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn errors_carry_lines() {
        let e = Session::parse("vars: x\nop f: x + q\n").unwrap_err();
        assert!(matches!(e, TextError::UnknownIdentifier { line: 2, col: 5, .. }));
        let e = Session::parse("vars: x\nmatrix 2:\n  1\n").unwrap_err();
        assert!(matches!(e, TextError::Semantic { line: 2, .. }));
        assert_eq!(Session::parse("order: 1\n").unwrap_err(), TextError::Missing("vars"));
        let e = Session::parse("vars: d1\n").unwrap_err();
        assert!(matches!(e, TextError::Semantic { line: 1, .. }));
        let e = Session::parse("vars: x\norder: 1, d1^2\n").unwrap_err();
        assert!(matches!(e, TextError::Semantic { line: 2, .. }));
    }

    #[test]
    fn json_lists_expressions() {
        let s = Session::parse(RUNNING).unwrap();
        let j = s.to_json();
        assert_eq!(j["ring"], "weyl");
        assert_eq!(j["gens"][2]["expr"], "(x/y)*d1 + d2 + 1/y");
        assert_eq!(j["order"][1], "d1");
    }
}

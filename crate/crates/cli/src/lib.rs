//! Command line front end: each subcommand reads session files, runs one
//! computation and prints the result as session text or JSON.
//!
//! Exit status is 0 on success, 1 when the answer is a mathematical "no"
//! (not a border basis, not integrable, not a member, ...) and 2 when the
//! input cannot be used.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use borderbasis::basis::{
    ideal_equal, membership, mult_matrices, BorderBasis, CriterionWitness,
};
use borderbasis::connect::{
    check_integrability, epsilon_factor, gauge, gauge_to_order_ideal, ideal_from_connection,
    is_closed, pfaffian_from_basis, BasisLabel,
};
use borderbasis::division::{border_divide, BorderPrebasis};
use borderbasis::field::{Monomial, QPoly, RationalFunction, VarTable};
use borderbasis::hilbert::{chart_ideal, commuting_variety_gens};
use borderbasis::order::OrderIdeal;
use borderbasis::text::session::matrix_json;
use borderbasis::text::{print_monomial, print_rf, Context, Session};
use borderbasis::weyl::{Operator, RingKind};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const GRAMMAR: &str = "\
Session files hold one record per line, `key: value` or `key NAME: value`;
indented lines continue a record and `#` starts a comment.

  ring: weyl | commutative        (default weyl)
  vars: x y                       derivation variables, or ring variables X Y
  params: s12 e                   further symbols of the coefficient field
  dvars: dx dy                    optional names for d1 d2
  order: 1, d1, d2                the order ideal, in any order
  gen P1: d1^2 - (1/x)*d1 + 2     elements of a border prebasis
  op F: x*d1 - 1                  other operators (division, membership)
  basis: 1, d1                    labels of the connection components
  matrix 1:                       connection matrix of d1, one row per line
    0 | 1
    -1/x | 1/x
  gauge:                          a change of basis F' = g F
  newbasis: 1, d1                 labels after the gauge
  target: 1, d2                   order ideal to move a border basis to

Expressions use + - * / ^ and parentheses over integers, variables,
parameters and d1..dn. Products are taken left to right in the Weyl
algebra, so d1*x is x*d1 + 1. Division is by coefficients only; in the
Weyl algebra write (1/q)*P rather than P/q.";

#[derive(Parser)]
#[command(
    name = "borderbasis",
    about = "Border bases of polynomial and rational Weyl algebra ideals, and their connection matrices",
    after_help = GRAMMAR
)]
struct Cli {
    /// Output syntax.
    #[arg(long, value_enum, default_value = "session", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Session,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// The border of the order ideal, or its k-th border.
    Border {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Corners of the order ideal.
    Corners { file: PathBuf },
    /// Index of every `gen` and `op` with respect to the order ideal.
    Index { file: PathBuf },
    /// Border division of every `op` by the prebasis.
    Divide { file: PathBuf },
    /// Multiplication matrices of the prebasis.
    Multmatrices { file: PathBuf },
    /// Whether the prebasis is a border basis.
    Verify { file: PathBuf },
    /// Ideal membership of every `op`.
    Member { file: PathBuf },
    /// Whether two border bases generate the same ideal.
    IdealEq { first: PathBuf, second: PathBuf },
    /// Apply the `gauge` record to the connection, or move the border basis to `target`.
    Gauge { file: PathBuf },
    /// Integrability of the connection matrices.
    CheckInt { file: PathBuf },
    /// The border prebasis read off from a connection in a monomial basis.
    FromConnection { file: PathBuf },
    /// The connection matrices of a border basis.
    ToPfaffian { file: PathBuf },
    /// Whether every A_i is the named parameter times a matrix free of it.
    EpsFactor {
        file: PathBuf,
        #[arg(long)]
        eps: String,
    },
    /// Whether the connection one-form is closed.
    Closed { file: PathBuf },
    /// Generic prebasis of the order ideal and the relations of its chart.
    Chart { file: PathBuf },
    /// Entries of the pairwise commutators of n generic m x m matrices.
    CommutingGens {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

/// A malformed or unusable input.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Val {
    Text(String),
    List(Vec<String>),
    Bool(bool),
    Int(u64),
    Rows(Vec<Vec<String>>),
}

struct Record {
    key: String,
    name: Option<String>,
    val: Val,
}

enum Output {
    Records(Vec<Record>),
    Session(Box<Session>),
}

struct Outcome {
    output: Output,
    positive: bool,
}

impl Outcome {
    fn ok(output: Output) -> Self {
        Outcome {
            output,
            positive: true,
        }
    }
}

fn rec(key: &str, val: Val) -> Record {
    Record {
        key: key.into(),
        name: None,
        val,
    }
}

fn named(key: &str, name: impl Into<String>, val: Val) -> Record {
    Record {
        key: key.into(),
        name: Some(name.into()),
        val,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}\n{GRAMMAR}\n")
            };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Session => render_session(&outcome.output),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&render_json(&outcome.output))
                        .expect("plain data serializes");
                    s.push('\n');
                    s
                }
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            if outcome.positive {
                0
            } else {
                1
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<Session, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Session::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn need_order(s: &Session) -> Result<&OrderIdeal, InputError> {
    s.order
        .as_ref()
        .ok_or_else(|| InputError("the session has no `order` record".into()))
}

fn prebasis(s: &Session) -> Result<BorderPrebasis, InputError> {
    Ok(s.prebasis()?)
}

/// The `gen` names by border position.
fn gen_names(s: &Session, g: &BorderPrebasis) -> Vec<String> {
    g.border()
        .iter()
        .map(|b| {
            s.gens
                .iter()
                .find(|(_, p)| !p.coeff(b).is_zero())
                .map(|(n, _)| n.clone())
                .expect("every border monomial marks a generator")
        })
        .collect()
}

fn witness_records(s: &Session, w: &CriterionWitness) -> Vec<Record> {
    vec![
        rec(
            "witness",
            Val::Text(format!(
                "i={} j={} row={} col={}",
                w.i + 1,
                w.j + 1,
                w.row + 1,
                w.col + 1
            )),
        ),
        rec("residual", Val::Text(print_rf(&w.residual, &s.ctx.vars))),
    ]
}

/// The border basis of `s`, or the records explaining why it is not one.
fn verified(s: &Session) -> Result<Result<BorderBasis, Vec<Record>>, InputError> {
    let g = prebasis(s)?;
    Ok(g.verify().map_err(|w| {
        let mut r = vec![rec("border basis", Val::Bool(false))];
        r.extend(witness_records(s, &w));
        r
    }))
}

fn negative(records: Vec<Record>) -> Outcome {
    Outcome {
        output: Output::Records(records),
        positive: false,
    }
}

/// A copy of `s` keeping only the header records.
fn header_of(s: &Session) -> Session {
    Session::new(s.ctx.clone())
}

fn numbered_gens(g: &BorderPrebasis) -> Vec<(String, Operator)> {
    g.generators()
        .into_iter()
        .enumerate()
        .map(|(j, p)| (format!("P{}", j + 1), p))
        .collect()
}

fn dispatch(cmd: &Command) -> Result<Outcome, InputError> {
    match cmd {
        Command::Border { file, k } => {
            let s = load(file)?;
            let o = need_order(&s)?;
            let r = if *k == 1 {
                rec("border", Val::List(monomials(&s, &o.border())))
            } else {
                named("border", k.to_string(), Val::List(monomials(&s, &o.kth_border(*k))))
            };
            Ok(Outcome::ok(Output::Records(vec![r])))
        }
        Command::Corners { file } => {
            let s = load(file)?;
            let o = need_order(&s)?;
            Ok(Outcome::ok(Output::Records(vec![rec(
                "corners",
                Val::List(monomials(&s, &o.corners())),
            )])))
        }
        Command::Index { file } => {
            let s = load(file)?;
            let o = need_order(&s)?;
            let mut out = Vec::new();
            for (name, p) in s.gens.iter().chain(s.ops.iter()) {
                let k = o.index_op(p).map_err(|e| InputError(format!("{name}: {e}")))?;
                out.push(named("index", name.clone(), Val::Int(k.into())));
            }
            Ok(Outcome::ok(Output::Records(out)))
        }
        Command::Divide { file } => {
            let s = load(file)?;
            let g = prebasis(&s)?;
            if s.ops.is_empty() {
                return Err(InputError("no `op` records to divide".into()));
            }
            let names = gen_names(&s, &g);
            let mut out = Vec::new();
            for (name, f) in &s.ops {
                let d = border_divide(f, &g)?;
                for (j, q) in d.quotients.iter().enumerate() {
                    out.push(named(
                        "quotient",
                        format!("{name}.{}", names[j]),
                        Val::Text(s.operator_text(q)),
                    ));
                }
                let r = Operator::from_terms(
                    f.n(),
                    f.nvars(),
                    g.order().elements().iter().cloned().zip(d.remainder.iter().cloned()),
                );
                out.push(named("remainder", name.clone(), Val::Text(s.operator_text(&r))));
            }
            Ok(Outcome::ok(Output::Records(out)))
        }
        Command::Multmatrices { file } => {
            let s = load(file)?;
            let g = prebasis(&s)?;
            let mm = mult_matrices(&g);
            let mut o = s.clone();
            o.ops.clear();
            o.gauge = None;
            o.newbasis = None;
            o.target = None;
            match &s.basis {
                Some(BasisLabel::Monomials(label)) => {
                    o.matrices = mm.in_basis(label).ok_or_else(|| {
                        InputError("the `basis` record is not a reordering of the order ideal".into())
                    })?;
                }
                _ => {
                    o.basis = Some(BasisLabel::Monomials(g.order().elements().to_vec()));
                    o.matrices = mm.mats;
                }
            }
            Ok(Outcome::ok(Output::Session(Box::new(o))))
        }
        Command::Verify { file } => {
            let s = load(file)?;
            Ok(match verified(&s)? {
                Ok(_) => Outcome::ok(Output::Records(vec![rec("border basis", Val::Bool(true))])),
                Err(r) => negative(r),
            })
        }
        Command::Member { file } => {
            let s = load(file)?;
            if s.ops.is_empty() {
                return Err(InputError("no `op` records to test".into()));
            }
            let b = match verified(&s)? {
                Ok(b) => b,
                Err(r) => return Ok(negative(r)),
            };
            let mut out = Vec::new();
            let mut all = true;
            for (name, f) in &s.ops {
                let m = membership(f, &b)?;
                all &= m;
                out.push(named("member", name.clone(), Val::Bool(m)));
            }
            Ok(Outcome {
                output: Output::Records(out),
                positive: all,
            })
        }
        Command::IdealEq { first, second } => {
            let s1 = load(first)?;
            let s2 = load(second)?;
            if s1.ctx.vars != s2.ctx.vars || s1.ctx.ring != s2.ctx.ring {
                return Err(InputError("the two sessions declare different rings".into()));
            }
            let b1 = verified(&s1)?
                .map_err(|_| InputError(format!("{}: not a border basis", first.display())))?;
            let b2 = verified(&s2)?
                .map_err(|_| InputError(format!("{}: not a border basis", second.display())))?;
            let eq = ideal_equal(&b1, &b2)?;
            Ok(Outcome {
                output: Output::Records(vec![rec("equal", Val::Bool(eq))]),
                positive: eq,
            })
        }
        Command::Gauge { file } => {
            let s = load(file)?;
            if let Some(g) = &s.gauge {
                let c = s.connection()?;
                let label = s.newbasis.clone().unwrap_or_else(|| default_label(c.rank()));
                let moved = gauge(&c, g, label)?;
                let mut o = header_of(&s);
                o.basis = Some(moved.label().clone());
                o.matrices = moved.mats().to_vec();
                Ok(Outcome::ok(Output::Session(Box::new(o))))
            } else if let Some(target) = &s.target {
                let b = match verified(&s)? {
                    Ok(b) => b,
                    Err(r) => return Ok(negative(r)),
                };
                let (g, moved, p) = gauge_to_order_ideal(&b, target)?;
                let mut o = header_of(&s);
                o.order = Some(target.clone());
                o.gens = numbered_gens(&p);
                o.basis = Some(moved.label().clone());
                o.matrices = moved.mats().to_vec();
                o.gauge = Some(g);
                Ok(Outcome::ok(Output::Session(Box::new(o))))
            } else {
                Err(InputError("the session has neither a `gauge` nor a `target` record".into()))
            }
        }
        Command::CheckInt { file } => {
            let s = load(file)?;
            let c = s.connection()?;
            Ok(match check_integrability(&c) {
                Ok(()) => Outcome::ok(Output::Records(vec![rec("integrable", Val::Bool(true))])),
                Err(w) => {
                    let mut r = vec![rec("integrable", Val::Bool(false))];
                    r.extend(witness_records(&s, &w));
                    negative(r)
                }
            })
        }
        Command::FromConnection { file } => {
            let s = load(file)?;
            let c = s.connection()?;
            let order = match (&s.order, c.label()) {
                (Some(o), _) => o.clone(),
                (None, BasisLabel::Monomials(m)) => OrderIdeal::new(m.iter().cloned())?,
                (None, BasisLabel::Text(_)) => {
                    return Err(InputError(
                        "the `basis` record must list the monomials of an order ideal".into(),
                    ))
                }
            };
            let p = ideal_from_connection(&c, &order)?;
            let mut o = header_of(&s);
            o.order = Some(order);
            o.gens = numbered_gens(&p);
            Ok(Outcome::ok(Output::Session(Box::new(o))))
        }
        Command::ToPfaffian { file } => {
            let s = load(file)?;
            let b = match verified(&s)? {
                Ok(b) => b,
                Err(r) => return Ok(negative(r)),
            };
            let c = pfaffian_from_basis(&b);
            let mut o = header_of(&s);
            o.basis = Some(c.label().clone());
            o.matrices = c.mats().to_vec();
            Ok(Outcome::ok(Output::Session(Box::new(o))))
        }
        Command::EpsFactor { file, eps } => {
            let s = load(file)?;
            let c = s.connection()?;
            let k = s
                .ctx
                .vars
                .index_of(eps)
                .filter(|&k| !s.ctx.vars.is_derivation(k))
                .ok_or_else(|| InputError(format!("`{eps}` is not a declared parameter")))?;
            Ok(match epsilon_factor(&c, k) {
                Some(bs) => {
                    let mut r = vec![rec("epsilon factor", Val::Text("present".into()))];
                    for (i, b) in bs.iter().enumerate() {
                        r.push(named("matrix", (i + 1).to_string(), Val::Rows(matrix_json(b, &s.ctx.vars))));
                    }
                    Outcome::ok(Output::Records(r))
                }
                None => negative(vec![rec("epsilon factor", Val::Text("absent".into()))]),
            })
        }
        Command::Closed { file } => {
            let s = load(file)?;
            let c = s.connection()?;
            let closed = is_closed(&c);
            Ok(Outcome {
                output: Output::Records(vec![rec("closed", Val::Bool(closed))]),
                positive: closed,
            })
        }
        Command::Chart { file } => {
            let s = load(file)?;
            let o = need_order(&s)?;
            let vars = VarTable::new(s.ctx.vars.derivation_vars().to_vec(), Vec::<String>::new())?;
            let chart = chart_ideal(o, &vars)?;
            let ctx = Context::new(chart.vars.clone(), RingKind::Commutative);
            let n = ctx.n();
            let mut out = Session::new(ctx);
            out.order = Some(o.clone());
            out.gens = numbered_gens(&chart.prebasis);
            out.ops = relations(&chart.commutator_polys, |p| {
                Operator::from_coeff(n, RationalFunction::from_poly(p))
            });
            Ok(Outcome::ok(Output::Session(Box::new(out))))
        }
        Command::CommutingGens { n, m } => {
            if *n < 2 || *m < 1 {
                return Err(InputError("need --n at least 2 and --m at least 1".into()));
            }
            let (vars, polys) = commuting_variety_gens(*n, *m);
            let nv = vars.nvars();
            let mut out = Session::new(Context::new(vars, RingKind::Commutative));
            out.ops = relations(&polys, |p| {
                Operator::from_terms(
                    nv,
                    nv,
                    p.terms()
                        .iter()
                        .map(|(mono, c)| (mono.clone(), RationalFunction::constant(nv, c.clone()))),
                )
            });
            Ok(Outcome::ok(Output::Session(Box::new(out))))
        }
    }
}

/// Nonzero relations without repeats (up to sign), named `E1, E2, ...`.
fn relations(polys: &[QPoly], to_op: impl Fn(&QPoly) -> Operator) -> Vec<(String, Operator)> {
    let mut seen: Vec<Operator> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let f = to_op(p);
        if !seen.iter().any(|g| g == &f || g == &f.neg()) {
            seen.push(f);
        }
    }
    seen.into_iter()
        .enumerate()
        .map(|(k, f)| (format!("E{}", k + 1), f))
        .collect()
}

fn default_label(m: usize) -> BasisLabel {
    BasisLabel::Text((1..=m).map(|k| format!("f{k}")).collect())
}

fn monomials(s: &Session, ms: &[Monomial]) -> Vec<String> {
    ms.iter()
        .map(|m| print_monomial(m, &s.ctx))
        .collect()
}

fn record_line(r: &Record) -> String {
    let head = match &r.name {
        Some(n) => format!("{} {n}", r.key),
        None => r.key.clone(),
    };
    match &r.val {
        Val::Text(t) => format!("{head}: {t}\n"),
        Val::List(v) => format!("{head}: {}\n", v.join(", ")),
        Val::Bool(b) => format!("{head}: {b}\n"),
        Val::Int(k) => format!("{head}: {k}\n"),
        Val::Rows(rows) => {
            let mut s = format!("{head}:\n");
            for row in rows {
                s.push_str(&format!("  {}\n", row.join(" | ")));
            }
            s
        }
    }
}

fn render_session(o: &Output) -> String {
    match o {
        Output::Records(r) => r.iter().map(record_line).collect(),
        Output::Session(s) => s.to_text(),
    }
}

fn records_json(records: &[Record]) -> Map<String, Value> {
    let mut map = Map::new();
    for r in records {
        let v = match &r.val {
            Val::Text(t) => json!(t),
            Val::List(l) => json!(l),
            Val::Bool(b) => json!(b),
            Val::Int(k) => json!(k),
            Val::Rows(rows) => json!(rows),
        };
        match &r.name {
            None => {
                map.insert(r.key.clone(), v);
            }
            Some(n) => {
                let slot = map
                    .entry(r.key.clone())
                    .or_insert_with(|| Value::Object(Map::new()));
                if let Value::Object(inner) = slot {
                    inner.insert(n.clone(), v);
                }
            }
        }
    }
    map
}

fn render_json(o: &Output) -> Value {
    match o {
        Output::Records(r) => Value::Object(records_json(r)),
        Output::Session(s) => s.to_json(),
    }
}

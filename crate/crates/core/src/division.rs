//! Border prebases and border division, commutative and Weyl.

use thiserror::Error;

use crate::field::{binomial, Monomial, RationalFunction};
use crate::order::{IndexCache, OrderIdeal};
use crate::weyl::{Operator, RingKind};

/// Environment variable overriding the iteration cap of border division.
pub const DIVISION_CAP_ENV: &str = "BORDERBASIS_DIVISION_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrebasisError {
    #[error("no element is marked by border monomial {0:?}")]
    MissingMarker(Monomial),
    #[error("two elements are marked by {0:?}")]
    DuplicateMarker(Monomial),
    #[error("element {0} is not of the form b - (combination of the order ideal)")]
    BadSupport(usize),
    #[error("commutative prebasis coefficient depends on a ring variable")]
    NonConstantCoefficient,
    #[error("coefficient grid has the wrong shape")]
    Shape,
    #[error("operator arity does not match the order ideal")]
    Arity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("border division exceeded {limit} iterations; this is an internal error")]
    IterationCap { limit: u64 },
    #[error("operator arity does not match the prebasis")]
    Arity,
}

/// Elements `g_j = b_j − Σ_i c_{i,j} t_i`, one per border monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderPrebasis {
    order: OrderIdeal,
    border: Vec<Monomial>,
    /// `coeffs[j][i] = c_{i,j}`.
    coeffs: Vec<Vec<RationalFunction>>,
    ring: RingKind,
    nvars: usize,
}

impl BorderPrebasis {
    /// Builds a prebasis from its coefficient grid, row `j` holding the
    /// coefficients of `g_j` on `t_1..t_m`.
    pub fn new(
        order: OrderIdeal,
        coeffs: Vec<Vec<RationalFunction>>,
        ring: RingKind,
        nvars: usize,
    ) -> Result<Self, PrebasisError> {
        let border = order.border();
        if coeffs.len() != border.len() || coeffs.iter().any(|r| r.len() != order.len()) {
            return Err(PrebasisError::Shape);
        }
        if coeffs.iter().flatten().any(|c| c.nvars() != nvars) || order.n() > nvars {
            return Err(PrebasisError::Arity);
        }
        if ring == RingKind::Commutative
            && coeffs
                .iter()
                .flatten()
                .any(|c| (0..order.n()).any(|i| c.depends_on(i)))
        {
            return Err(PrebasisError::NonConstantCoefficient);
        }
        Ok(BorderPrebasis {
            order,
            border,
            coeffs,
            ring,
            nvars,
        })
    }

    /// Reads a prebasis from marked elements given in any order. Each
    /// operator must contain exactly one border monomial; it is normalized
    /// to coefficient one there.
    pub fn from_operators(
        order: OrderIdeal,
        ops: &[Operator],
        ring: RingKind,
    ) -> Result<Self, PrebasisError> {
        let border = order.border();
        let nvars = ops.first().map_or(order.n(), |g| g.nvars());
        let mut rows: Vec<Option<Vec<RationalFunction>>> = vec![None; border.len()];
        for (k, g) in ops.iter().enumerate() {
            if g.n() != order.n() || g.nvars() != nvars {
                return Err(PrebasisError::Arity);
            }
            let mut marker = None;
            for m in g.support() {
                if order.contains(m) {
                    continue;
                }
                match border.iter().position(|b| b == m) {
                    Some(s) if marker.is_none() => marker = Some(s),
                    _ => return Err(PrebasisError::BadSupport(k)),
                }
            }
            let s = marker.ok_or(PrebasisError::BadSupport(k))?;
            if rows[s].is_some() {
                return Err(PrebasisError::DuplicateMarker(border[s].clone()));
            }
            let lead = g.coeff(&border[s]).inv().unwrap();
            let row = order
                .elements()
                .iter()
                .map(|t| g.coeff(t).mul(&lead).neg())
                .collect();
            rows[s] = Some(row);
        }
        let mut coeffs = Vec::with_capacity(border.len());
        for (s, r) in rows.into_iter().enumerate() {
            coeffs.push(r.ok_or_else(|| PrebasisError::MissingMarker(border[s].clone()))?);
        }
        Self::new(order, coeffs, ring, nvars)
    }

    pub fn order(&self) -> &OrderIdeal {
        &self.order
    }

    pub fn border(&self) -> &[Monomial] {
        &self.border
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `c_{i,j}`: coefficient of `t_i` subtracted in `g_j`.
    pub fn coeff(&self, i: usize, j: usize) -> &RationalFunction {
        &self.coeffs[j][i]
    }

    /// Coefficients of `g_j` on `t_1..t_m` (with the sign of `c_{i,j}`).
    pub fn coeff_column(&self, j: usize) -> &[RationalFunction] {
        &self.coeffs[j]
    }

    pub fn marker_position(&self, b: &Monomial) -> Option<usize> {
        self.border.iter().position(|x| x == b)
    }

    /// The marked element `g_j`.
    pub fn generator(&self, j: usize) -> Operator {
        let mut g = Operator::monomial(self.border[j].clone(), self.nvars);
        for (i, t) in self.order.elements().iter().enumerate() {
            g.add_term(t.clone(), &self.coeffs[j][i].neg());
        }
        g
    }

    pub fn generators(&self) -> Vec<Operator> {
        (0..self.border.len()).map(|j| self.generator(j)).collect()
    }

    /// Same elements over a reordered border enumeration; `perm[k]` is the
    /// old position of the new `k`-th border element.
    pub fn with_border_order(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.border.len());
        BorderPrebasis {
            order: self.order.clone(),
            border: perm.iter().map(|&k| self.border[k].clone()).collect(),
            coeffs: perm.iter().map(|&k| self.coeffs[k].clone()).collect(),
            ring: self.ring,
            nvars: self.nvars,
        }
    }

    /// Moves the coefficients into a field with `extra` more variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        BorderPrebasis {
            order: self.order.clone(),
            border: self.border.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|c| c.extend_vars(extra)).collect())
                .collect(),
            ring: self.ring,
            nvars: self.nvars + extra,
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let coeffs: Vec<Vec<RationalFunction>> = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(&f).collect())
            .collect();
        let nvars = coeffs
            .first()
            .and_then(|r| r.first())
            .map_or(self.nvars, |c| c.nvars());
        BorderPrebasis {
            order: self.order.clone(),
            border: self.border.clone(),
            coeffs,
            ring: self.ring,
            nvars,
        }
    }
}

/// `f = Σ_j f_j g_j + Σ_i c_i t_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult {
    pub quotients: Vec<Operator>,
    pub remainder: Vec<RationalFunction>,
}

impl DivisionResult {
    /// Expands `Σ f_j g_j + Σ c_i t_i` in the prebasis ring.
    pub fn reconstruct(&self, g: &BorderPrebasis) -> Operator {
        let mut acc = Operator::zero(g.n(), g.nvars());
        for (j, q) in self.quotients.iter().enumerate() {
            if !q.is_zero() {
                acc = acc.add(&q.mul_in(&g.generator(j), g.ring()));
            }
        }
        for (i, t) in g.order().elements().iter().enumerate() {
            acc.add_term(t.clone(), &self.remainder[i]);
        }
        acc
    }
}

fn iteration_cap(f: &Operator, index: u32) -> u64 {
    if let Some(v) = std::env::var(DIVISION_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
    {
        return v;
    }
    let d = index + f.degree();
    let count = binomial(d + f.n() as u32, f.n() as u32);
    u64::try_from(count.saturating_mul(10)).unwrap_or(u64::MAX)
}

/// Commutative border division.
pub fn border_divide_comm(f: &Operator, g: &BorderPrebasis) -> Result<DivisionResult, DivisionError> {
    border_divide_in(f, g, RingKind::Commutative)
}

/// Border division in the rational Weyl algebra; quotients multiply the
/// generators from the left.
pub fn border_divide_weyl(f: &Operator, g: &BorderPrebasis) -> Result<DivisionResult, DivisionError> {
    border_divide_in(f, g, RingKind::Weyl)
}

/// Border division in the prebasis ring.
pub fn border_divide(f: &Operator, g: &BorderPrebasis) -> Result<DivisionResult, DivisionError> {
    border_divide_in(f, g, g.ring())
}

fn border_divide_in(
    f: &Operator,
    g: &BorderPrebasis,
    ring: RingKind,
) -> Result<DivisionResult, DivisionError> {
    if f.n() != g.n() || f.nvars() != g.nvars() {
        return Err(DivisionError::Arity);
    }
    let n = g.n();
    let nvars = g.nvars();
    let order = g.order();
    let mut quotients = vec![Operator::zero(n, nvars); g.border().len()];
    let mut remainder = vec![RationalFunction::zero(nvars); order.len()];
    if f.is_zero() {
        return Ok(DivisionResult {
            quotients,
            remainder,
        });
    }
    let mut cache = IndexCache::new(order);
    let start_index = f.support().map(|m| cache.index(m)).max().unwrap();
    let cap = iteration_cap(f, start_index);
    let mut generators: Vec<Option<Operator>> = vec![None; g.border().len()];

    let mut h = f.clone();
    let mut steps: u64 = 0;
    loop {
        if h.is_zero() {
            break;
        }
        steps += 1;
        if steps > cap {
            return Err(DivisionError::IterationCap { limit: cap });
        }
        // the term of maximal index, then maximal degree, then largest in
        // degrevlex; terms iterate ascending so the last maximum wins
        let mut best: Option<(u32, u32, Monomial)> = None;
        for m in h.support() {
            let key = (cache.index(m), m.degree());
            if best.as_ref().is_none_or(|b| (b.0, b.1) <= key) {
                best = Some((key.0, key.1, m.clone()));
            }
        }
        let (k, deg, t) = best.unwrap();
        if k == 0 {
            for (m, c) in h.terms() {
                let pos = order.position(m).unwrap();
                remainder[pos] = remainder[pos].add(c);
            }
            break;
        }
        let a = h.coeff(&t);
        let (i, tp) = g
            .border()
            .iter()
            .enumerate()
            .find_map(|(i, b)| {
                t.div(b)
                    .filter(|q| q.degree() == k - 1)
                    .map(|q| (i, q))
            })
            .expect("a monomial of index k is t'·b with deg t' = k - 1");
        let gi = generators[i].get_or_insert_with(|| g.generator(i));
        let lhs = Operator::term(tp, a);
        let sub = lhs.mul_in(gi, ring);
        #[cfg(debug_assertions)]
        for m in sub.support() {
            if *m != t {
                let key = (cache.index(m), m.degree());
                debug_assert!(
                    key < (k, deg),
                    "division step did not decrease (index, degree)"
                );
            }
        }
        h = h.sub(&sub);
        debug_assert!(h.coeff(&t).is_zero());
        quotients[i] = quotients[i].add(&lhs);
    }
    Ok(DivisionResult {
        quotients,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Prebasis with (1, X, Y, XY) and constant coefficients from the
    /// commutative four-point example.
    fn four_points() -> BorderPrebasis {
        let o = OrderIdeal::from_exponents(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let c = |v: i64| RationalFunction::from_int(2, v);
        let x = |e: &[u16], v: i64| (m(e), c(v));
        let ops = [
            // X^2 - XY - 2X + Y + 1
            Operator::from_terms(2, 2, [x(&[2, 0], 1), x(&[1, 1], -1), x(&[1, 0], -2), x(&[0, 1], 1), x(&[0, 0], 1)]),
            // X^2 Y - 2XY + 2Y - 1
            Operator::from_terms(2, 2, [x(&[2, 1], 1), x(&[1, 1], -2), x(&[0, 1], 2), x(&[0, 0], -1)]),
            // Y^2 - XY + X - 1
            Operator::from_terms(2, 2, [x(&[0, 2], 1), x(&[1, 1], -1), x(&[1, 0], 1), x(&[0, 0], -1)]),
            // XY^2 - XY + X + Y - 2
            Operator::from_terms(2, 2, [x(&[1, 2], 1), x(&[1, 1], -1), x(&[1, 0], 1), x(&[0, 1], 1), x(&[0, 0], -2)]),
        ];
        BorderPrebasis::from_operators(o, &ops, RingKind::Commutative).unwrap()
    }

    #[test]
    fn order_ideal_element_divides_to_unit_vector() {
        let g = four_points();
        let t = g.order().elements()[2].clone();
        let r = border_divide_comm(&Operator::monomial(t, 2), &g).unwrap();
        assert!(r.quotients.iter().all(|q| q.is_zero()));
        let mut e = vec![RationalFunction::zero(2); 4];
        e[2] = RationalFunction::one(2);
        assert_eq!(r.remainder, e);
    }

    #[test]
    fn border_monomial_gives_coefficient_column() {
        let g = four_points();
        for (s, b) in g.border().iter().enumerate() {
            let r = border_divide_comm(&Operator::monomial(b.clone(), 2), &g).unwrap();
            assert_eq!(r.remainder.as_slice(), g.coeff_column(s));
        }
    }

    #[test]
    fn reconstruction_of_higher_degree_monomial() {
        let g = four_points();
        let f = Operator::monomial(m(&[2, 2]), 2).scale_rational(&rat(3));
        let r = border_divide_comm(&f, &g).unwrap();
        assert_eq!(r.reconstruct(&g), f);
        let ind = g.order().index_op(&f).unwrap();
        for q in &r.quotients {
            if !q.is_zero() {
                assert!(q.degree() < ind);
            }
        }
    }

    #[test]
    fn missing_marker_is_rejected() {
        let o = OrderIdeal::trivial(2);
        let ops = [Operator::d(2, 2, 0)];
        assert_eq!(
            BorderPrebasis::from_operators(o, &ops, RingKind::Weyl),
            Err(PrebasisError::MissingMarker(m(&[0, 1])))
        );
    }

    #[test]
    fn commutative_rejects_variable_coefficients() {
        let o = OrderIdeal::trivial(1);
        let x = RationalFunction::var(1, 0);
        let err = BorderPrebasis::new(o, vec![vec![x]], RingKind::Commutative, 1);
        assert_eq!(err, Err(PrebasisError::NonConstantCoefficient));
    }

    #[test]
    fn weyl_division_of_zero() {
        let o = OrderIdeal::trivial(1);
        let g = BorderPrebasis::new(o, vec![vec![RationalFunction::var(1, 0)]], RingKind::Weyl, 1)
            .unwrap();
        let r = border_divide_weyl(&Operator::zero(1, 1), &g).unwrap();
        assert!(r.remainder[0].is_zero());
    }

    #[test]
    fn weyl_division_rank_one() {
        // g = ∂ - x; ∂^2 = (∂ + x)(∂ - x) + 1 + x^2
        let o = OrderIdeal::trivial(1);
        let x = RationalFunction::var(1, 0);
        let g = BorderPrebasis::new(o, vec![vec![x.clone()]], RingKind::Weyl, 1).unwrap();
        let f = Operator::d(1, 1, 0).pow(2);
        let r = border_divide_weyl(&f, &g).unwrap();
        assert_eq!(r.remainder[0], x.mul(&x).add(&RationalFunction::one(1)));
        assert_eq!(r.reconstruct(&g), f);
    }
}

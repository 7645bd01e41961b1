//! Normally ordered operators: rational-function coefficients on the left,
//! monomials in `∂_1..∂_n` (or in commuting `X_1..X_n`) on the right.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{binomial, BigRational, Monomial, RationalFunction};

/// Multiplication rule for [`Operator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    /// Commuting variables `X_1..X_n`; coefficients are free of the `X_i`.
    Commutative,
    /// Rational Weyl algebra, `[∂_i, x_i] = 1`.
    Weyl,
}

/// Sparse operator `Σ c_α ∂^α`.
///
/// The same type carries commutative polynomials `Σ c_α X^α`; which
/// product applies is decided by the caller through [`RingKind`].
/// Monomials have length `n` (the number of derivation variables) and the
/// coefficients live in a field with `nvars >= n` polynomial variables, the
/// first `n` of which are the `x_i`.
#[derive(Clone, PartialEq)]
pub struct Operator {
    n: usize,
    nvars: usize,
    terms: BTreeMap<Monomial, RationalFunction>,
}

/// Elements of the rational Weyl algebra.
pub type WeylOperator = Operator;

impl Operator {
    pub fn zero(n: usize, nvars: usize) -> Self {
        assert!(n <= nvars, "more derivations than variables");
        Operator {
            n,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, nvars: usize) -> Self {
        Self::from_coeff(n, RationalFunction::one(nvars))
    }

    pub fn from_coeff(n: usize, c: RationalFunction) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: RationalFunction) -> Self {
        let mut op = Self::zero(m.nvars(), c.nvars());
        if !c.is_zero() {
            op.terms.insert(m, c);
        }
        op
    }

    pub fn monomial(m: Monomial, nvars: usize) -> Self {
        Self::term(m, RationalFunction::one(nvars))
    }

    /// `∂_i`.
    pub fn d(n: usize, nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(n, i), nvars)
    }

    pub fn from_terms(
        n: usize,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, RationalFunction)>,
    ) -> Self {
        let mut op = Self::zero(n, nvars);
        for (m, c) in terms {
            op.add_term(m, &c);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> RationalFunction {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn leading(&self) -> Option<(&Monomial, &RationalFunction)> {
        self.terms.iter().next_back()
    }

    /// Maximal total degree of the monomials; 0 for the zero operator.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when every coefficient is a polynomial.
    pub fn is_polynomial_coeff(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial())
    }

    /// True when no coefficient depends on the first `n` variables.
    pub fn has_constant_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| (0..self.n).all(|i| !c.depends_on(i)))
    }

    fn check(&self, other: &Self) {
        assert!(
            self.n == other.n && self.nvars == other.nvars,
            "operator arity mismatch"
        );
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Operator {
            n: self.n,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// `c · self`, multiplying every coefficient on the left.
    pub fn scale_left(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.nvars);
        }
        Operator {
            n: self.n,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), c.mul(a)))
                .collect(),
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale_left(&RationalFunction::constant(self.nvars, c.clone()))
    }

    /// Product in the given ring.
    pub fn mul_in(&self, other: &Self, ring: RingKind) -> Self {
        match ring {
            RingKind::Weyl => self.mul(other),
            RingKind::Commutative => self.mul_commutative(other),
        }
    }

    /// Product with commuting variables.
    pub fn mul_commutative(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.n, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul(cb));
            }
        }
        out
    }

    /// Normally ordered product in the rational Weyl algebra, using
    /// `∂^α b = Σ_{γ ≤ α} C(α, γ) (∂^γ • b) ∂^{α-γ}`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.n, self.nvars);
        for (mb, cb) in &other.terms {
            let mut derivs = DerivativeCache::new(cb.clone());
            for (ma, ca) in &self.terms {
                for gamma in ma.divisors() {
                    let db = derivs.get(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let coef = multinomial(ma, &gamma);
                    let c = ca.mul(&db).scale_by(&BigRational::from_integer(coef.into()));
                    let rest = ma.div(&gamma).unwrap();
                    out.add_term(rest.mul(mb), &c);
                }
            }
        }
        out
    }

    /// `self · c` for a coefficient `c`.
    pub fn mul_coeff_right(&self, c: &RationalFunction) -> Self {
        self.mul(&Self::from_coeff(self.n, c.clone()))
    }

    /// `P • f`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        assert_eq!(f.nvars(), self.nvars, "operator arity mismatch");
        let mut derivs = DerivativeCache::new(f.clone());
        let mut acc = RationalFunction::zero(self.nvars);
        for (m, c) in &self.terms {
            acc = acc.add(&c.mul(&derivs.get(m)));
        }
        acc
    }

    /// `P Q - Q P` in the Weyl algebra.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Self::from_terms(
            self.n,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Moves the coefficients into a field with `extra` more variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Operator {
            n: self.n,
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.extend_vars(extra)))
                .collect(),
        }
    }
}

/// Memoized `∂^γ • f`.
struct DerivativeCache {
    base: RationalFunction,
    cache: HashMap<Monomial, RationalFunction>,
}

impl DerivativeCache {
    fn new(base: RationalFunction) -> Self {
        DerivativeCache {
            base,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, gamma: &Monomial) -> RationalFunction {
        if gamma.is_one() {
            return self.base.clone();
        }
        if let Some(v) = self.cache.get(gamma) {
            return v.clone();
        }
        let i = gamma.support().next().unwrap();
        let prev = gamma.div_var(i).unwrap();
        let v = self.get(&prev).derive(i);
        self.cache.insert(gamma.clone(), v.clone());
        v
    }
}

fn multinomial(alpha: &Monomial, gamma: &Monomial) -> u128 {
    alpha
        .exponents()
        .iter()
        .zip(gamma.exponents())
        .map(|(&a, &g)| binomial(a as u32, g as u32))
        .product()
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?}*d{:?}", c, m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> RationalFunction {
        RationalFunction::var(2, 0)
    }

    fn d(i: usize) -> Operator {
        Operator::d(2, 2, i)
    }

    fn c(f: RationalFunction) -> Operator {
        Operator::from_coeff(2, f)
    }

    #[test]
    fn leibniz_relation() {
        let comm = d(0).commutator(&c(x1()));
        assert_eq!(comm, Operator::one(2, 2));
    }

    #[test]
    fn derivations_commute() {
        assert_eq!(d(0).mul(&d(1)), d(1).mul(&d(0)));
        assert!(d(0).commutator(&d(1)).is_zero());
    }

    #[test]
    fn second_derivative_past_reciprocal() {
        let inv = x1().inv().unwrap();
        let p = d(0).pow(2).mul(&c(inv.clone()));
        let expected = Operator::from_terms(
            2,
            2,
            [
                (Monomial::from_exponents(&[2, 0]), inv.clone()),
                (Monomial::from_exponents(&[1, 0]), inv.pow(2).scale_by(&crate::field::rat(-2))),
                (Monomial::from_exponents(&[0, 0]), inv.pow(3).scale_by(&crate::field::rat(2))),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn euler_operator_eigenvalue() {
        let theta = c(x1()).mul(&d(0));
        let f = x1().pow(3);
        assert_eq!(theta.apply(&f), f.scale_by(&crate::field::rat(3)));
        assert_eq!(theta.commutator(&c(x1())), c(x1()));
    }

    #[test]
    fn mixed_derivative_of_product() {
        let x2 = RationalFunction::var(2, 1);
        let p = d(0).mul(&d(1));
        assert!(p.apply(&x1().mul(&x2)).is_one());
    }

    #[test]
    fn sum_drops_cancelled_terms() {
        let p = d(0).add(&c(x1().inv().unwrap()));
        assert_eq!(p.add(&d(0).neg()), c(x1().inv().unwrap()));
        assert_eq!(p.add(&Operator::zero(2, 2)), p);
    }
}

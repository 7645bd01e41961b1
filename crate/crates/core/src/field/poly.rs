use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::FieldError;

/// Sparse distributed multivariate polynomial.
///
/// Terms are kept sorted in descending degrevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

/// Polynomial over the rationals.
pub type QPoly = Poly<BigRational>;
/// Polynomial over the integers.
pub type ZPoly = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        Poly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), C::one())],
        }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            match acc.get_mut(&m) {
                Some(e) => e.add_assign(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exponent(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exponent(var)).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(var) > 0)
    }

    /// Flags of the variables that occur.
    pub fn variables(&self) -> Vec<bool> {
        let mut out = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for i in m.support() {
                out[i] = true;
            }
        }
        out
    }

    pub fn check_arity(&self, other: &Self) -> Result<(), FieldError> {
        if self.nvars != other.nvars {
            return Err(FieldError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplies by the term `c * m`; the order of terms is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), b.mul(c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if subtract {
                        c.sub_assign(&b[j].1);
                    } else {
                        c.add_assign(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if subtract { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "polynomial arity mismatch");
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = divisor.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, a) in &self.terms {
                terms.push((m.clone(), a.exact_div(&c)?));
            }
            return Some(Poly {
                nvars: self.nvars,
                terms,
            });
        }
        for v in 0..self.nvars {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        if divisor.total_degree() > self.total_degree() {
            return None;
        }
        let (dm, dc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.div(&dm)?;
            let qc = c.exact_div(&dc)?;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly {
            nvars: self.nvars,
            terms: quot,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_arity(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_arity(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_arity(other)?;
        Ok(self.mul(other))
    }

    /// Exact quotient, failing with `NotDivisible` on a nonzero remainder.
    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_arity(other)?;
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.exact_div(other).ok_or(FieldError::NotDivisible)
    }

    /// Appends `extra` variables that do not occur. Appended variables are
    /// the smallest in degrevlex, so the term order is unchanged.
    pub fn extend_vars(&self, extra: usize) -> Self {
        if extra == 0 {
            return self.clone();
        }
        let nvars = self.nvars + extra;
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(nvars, 0);
                    (Monomial::from_exponents(&e), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm = nm.with_exponent(var, e - 1);
            terms.push((nm, c.mul(&C::from_i64(e as i64))));
        }
        // differentiation can reorder terms
        Self::from_terms(self.nvars, terms)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`.
    /// Entry `k` holds the coefficient of `var^k` (with `var` exponent 0).
    pub fn to_univariate(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            buckets[e].push((m.with_exponent(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| Poly {
                // removing one variable's exponent keeps a degrevlex order
                // only within a fixed exponent of `var`; resort to be safe
                nvars: self.nvars,
                terms: {
                    let mut ts = ts;
                    ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                    ts
                },
            })
            .collect()
    }

    pub fn from_univariate(coeffs: &[Self], var: usize, nvars: usize) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exponent(var), 0);
                terms.push((m.with_exponent(var, k as u16), a.clone()));
            }
        }
        let mut p = Poly { nvars, terms };
        p.terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        p
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let coeffs = self.to_univariate(var);
        let mut acc = Self::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Embeds into a ring with more variables; variable `i` maps to `map[i]`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    }
}

impl ZPoly {
    /// Gcd of the integer coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if One::is_one(&g) {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if One::is_one(&g) {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
        }
    }

    pub fn to_rational(&self) -> QPoly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl QPoly {
    /// Splits `self = scale * primitive` with `primitive` an integer polynomial
    /// of content one and positive leading coefficient.
    pub fn split_content(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (<BigRational as Zero>::zero(), ZPoly::zero(self.nvars));
        }
        let mut lcm = <BigInt as One>::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let z = Poly {
            nvars: self.nvars,
            terms: ints,
        };
        let mut g = z.content();
        if z.terms[0].1.is_negative() {
            g = -g;
        }
        let prim = Poly {
            nvars: self.nvars,
            terms: z.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
        };
        (BigRational::new(g, lcm), prim)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = <BigRational as Zero>::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}", c, m)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn x() -> QPoly {
        QPoly::var(2, 0)
    }
    fn y() -> QPoly {
        QPoly::var(2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        let expected = x().mul(&x()).sub(&y().mul(&y()));
        assert_eq!(p, expected);
    }

    #[test]
    fn exact_division() {
        let a = x().mul(&x()).sub(&y().mul(&y()));
        let b = x().sub(&y());
        assert_eq!(a.exact_div(&b).unwrap(), x().add(&y()));
    }

    #[test]
    fn exact_division_fails_on_remainder() {
        let one = QPoly::one(2);
        let a = x().mul(&x()).add(&one);
        let b = x().sub(&one);
        assert!(a.exact_div(&b).is_none());
    }

    #[test]
    fn derivative_and_substitution() {
        // d/dx (x^2 y + 3x) = 2xy + 3
        let p = x().mul(&x()).mul(&y()).add(&x().scale(&q(3)));
        let d = p.derivative(0);
        assert_eq!(d, x().mul(&y()).scale(&q(2)).add(&QPoly::constant(2, q(3))));
        // substitute y := x + 1
        let s = p.substitute(1, &x().add(&QPoly::one(2)));
        let expected = x().pow(3).add(&x().pow(2)).add(&x().scale(&q(3)));
        assert_eq!(s, expected);
    }

    #[test]
    fn split_content_normalizes_sign() {
        let p = x().scale(&BigRational::new(BigInt::from(-2), BigInt::from(3)))
            .add(&QPoly::constant(2, q(4)));
        let (s, z) = p.split_content();
        assert_eq!(s, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        assert_eq!(z.terms()[0].1, BigInt::from(1));
        assert_eq!(z.terms()[1].1, BigInt::from(-6));
    }
}

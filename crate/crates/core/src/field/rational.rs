use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{QPoly, ZPoly};
use super::FieldError;

/// Element of `Q(params)(x)`, kept as `scale * num / den`.
///
/// `num` and `den` are integer polynomials of content one with positive
/// leading coefficient and no common factor, so every value has exactly one
/// representation. Zero has `scale = 0`, `num = 0`, `den = 1`.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    scale: BigRational,
    num: ZPoly,
    den: ZPoly,
}

fn exact(p: &ZPoly, d: &ZPoly) -> ZPoly {
    if d.is_one() {
        return p.clone();
    }
    p.exact_div(d).expect("gcd divides its argument")
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            scale: BigRational::zero(),
            num: ZPoly::zero(nvars),
            den: ZPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        RationalFunction {
            scale: c,
            num: ZPoly::one(nvars),
            den: ZPoly::one(nvars),
        }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RationalFunction {
            scale: BigRational::one(),
            num: ZPoly::var(nvars, i),
            den: ZPoly::one(nvars),
        }
    }

    pub fn from_poly(p: &QPoly) -> Self {
        let (scale, num) = p.split_content();
        if num.is_zero() {
            return Self::zero(p.nvars());
        }
        RationalFunction {
            scale,
            num,
            den: ZPoly::one(p.nvars()),
        }
    }

    /// Canonical reduced form of `num / den`.
    pub fn make(num: &QPoly, den: &QPoly) -> Result<Self, FieldError> {
        num.check_arity(den)?;
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        let (sn, n) = num.split_content();
        if n.is_zero() {
            return Ok(Self::zero(num.nvars()));
        }
        let (sd, d) = den.split_content();
        Ok(Self::reduce(sn / sd, n, d))
    }

    /// Reduces `scale * n / d` for primitive `n`, `d` with positive leading
    /// coefficients.
    fn reduce(scale: BigRational, n: ZPoly, d: ZPoly) -> Self {
        let g = gcd(&n, &d);
        RationalFunction {
            scale,
            num: exact(&n, &g),
            den: exact(&d, &g),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// True when both numerator and denominator are constants.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.scale.clone())
        } else {
            None
        }
    }

    /// True when the denominator is a constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator with the rational prefactor folded in.
    pub fn num(&self) -> QPoly {
        self.num.to_rational().scale(&self.scale)
    }

    /// Denominator: integer content one, positive leading coefficient.
    pub fn den(&self) -> QPoly {
        self.den.to_rational()
    }

    pub fn scale_factor(&self) -> &BigRational {
        &self.scale
    }

    pub fn primitive_num(&self) -> &ZPoly {
        &self.num
    }

    pub fn primitive_den(&self) -> &ZPoly {
        &self.den
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.num.depends_on(var) || self.den.depends_on(var)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            scale: -self.scale.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn scale_by(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            scale: &self.scale * c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "rational function arity mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        if self.den == other.den {
            let t = self
                .num
                .to_rational()
                .scale(&self.scale)
                .add(&other.num.to_rational().scale(&other.scale));
            let (s, t) = t.split_content();
            if t.is_zero() {
                return Self::zero(n);
            }
            return Self::reduce(s, t, self.den.clone());
        }
        let d = gcd(&self.den, &other.den);
        let d1 = exact(&self.den, &d);
        let d2 = exact(&other.den, &d);
        // common scale: the terms are combined over the integers after
        // bringing both prefactors to a common denominator
        let l = num_integer::Integer::lcm(self.scale.denom(), other.scale.denom());
        let c1 = self.scale.numer() * (&l / self.scale.denom());
        let c2 = other.scale.numer() * (&l / other.scale.denom());
        let t1 = self.num.mul(&d2).scale(&c1);
        let t2 = other.num.mul(&d1).scale(&c2);
        let t = t1.add(&t2);
        if t.is_zero() {
            return Self::zero(n);
        }
        let mut content = t.content();
        if t.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        let t = t.exact_div(&ZPoly::constant(n, content.clone())).unwrap();
        let scale = BigRational::new(content, l);
        let g = gcd(&t, &d);
        let num = exact(&t, &g);
        let den = d1.mul(&d2).mul(&exact(&d, &g));
        RationalFunction { scale, num, den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "rational function arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        RationalFunction {
            scale: &self.scale * &other.scale,
            num: exact(&self.num, &g1).mul(&exact(&other.num, &g2)),
            den: exact(&self.den, &g2).mul(&exact(&other.den, &g1)),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RationalFunction {
            scale: self.scale.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.nvars());
        }
        RationalFunction {
            scale: num_traits::pow(self.scale.clone(), e as usize),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative in polynomial variable `var`.
    pub fn derive(&self, var: usize) -> Self {
        let n = self.nvars();
        if self.is_zero() || !self.depends_on(var) {
            return Self::zero(n);
        }
        if self.den.is_one() {
            return Self::from_poly(&self.num.derivative(var).to_rational()).scale_by(&self.scale);
        }
        let t = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        if t.is_zero() {
            return Self::zero(n);
        }
        let mut content = t.content();
        if t.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        let t = t.exact_div(&ZPoly::constant(n, content.clone())).unwrap();
        let d2 = self.den.mul(&self.den);
        let g = gcd(&t, &d2);
        RationalFunction {
            scale: &self.scale * BigRational::from_integer(content),
            num: exact(&t, &g),
            den: exact(&d2, &g),
        }
    }

    /// Replaces polynomial variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        if !self.depends_on(var) {
            return self.clone();
        }
        let eval = |p: &ZPoly| -> Self {
            let mut acc = Self::zero(self.nvars());
            for c in p.to_univariate(var).iter().rev() {
                acc = acc.mul(value).add(&Self::from_poly(&c.to_rational()));
            }
            acc
        };
        let num = eval(&self.num);
        let den = eval(&self.den);
        num.div(&den)
            .expect("substitution makes the denominator vanish")
            .scale_by(&self.scale)
    }

    /// Value at a rational point, `None` when the denominator vanishes.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.to_rational().eval(point);
        if d.is_zero() {
            return None;
        }
        Some(&self.scale * self.num.to_rational().eval(point) / d)
    }

    pub fn extend_vars(&self, extra: usize) -> Self {
        RationalFunction {
            scale: self.scale.clone(),
            num: self.num.extend_vars(extra),
            den: self.den.extend_vars(extra),
        }
    }

    /// Moves into a ring of `nvars` variables with variable `i` sent to
    /// `map[i]`. The map must be injective.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        if self.is_zero() {
            return Self::zero(nvars);
        }
        let num = self.num.remap(map, nvars);
        let den = self.den.remap(map, nvars);
        // a different variable order can change leading coefficient signs
        let mut scale = self.scale.clone();
        let num = if Signed::is_negative(num.leading_coeff().unwrap()) {
            scale = -scale;
            num.neg()
        } else {
            num
        };
        let den = if Signed::is_negative(den.leading_coeff().unwrap()) {
            scale = -scale;
            den.neg()
        } else {
            den
        };
        RationalFunction { scale, num, den }
    }

    /// Rough size measure used to order work.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({})*({:?})", self.scale, self.num)
        } else {
            write!(f, "({})*({:?})/({:?})", self.scale, self.num, self.den)
        }
    }
}

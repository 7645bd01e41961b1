//! Fixture loading and random instances shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use borderbasis::division::BorderPrebasis;
use borderbasis::field::{rat, Monomial, QPoly, RationalFunction};
use borderbasis::matrix::Matrix;
use borderbasis::order::OrderIdeal;
use borderbasis::text::Session;
use borderbasis::weyl::{Operator, RingKind};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn load(rel: &str) -> Session {
    let path = fixture_path(rel);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Session::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn mono(e: &[u16]) -> Monomial {
    Monomial::from_exponents(e)
}

/// A polynomial in the first `used` of `nvars` variables with small
/// integer coefficients and total degree at most `deg`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, used: usize, deg: u16, terms: usize) -> QPoly {
    let mut p = QPoly::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u16; nvars];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 && used > 0 {
            e[rng.gen_range(0..used)] += 1;
            budget -= 1;
        }
        let c = rat(rng.gen_range(-3..=3));
        p = p.add(&QPoly::monomial(Monomial::from_exponents(&e), c));
    }
    p
}

/// A rational function in the first `used` variables; polynomial about
/// half of the time.
pub fn random_rf(rng: &mut impl Rng, nvars: usize, used: usize) -> RationalFunction {
    let num = random_poly(rng, nvars, used, 2, 3);
    if rng.gen_bool(0.5) {
        return RationalFunction::from_poly(&num);
    }
    loop {
        let den = random_poly(rng, nvars, used, 1, 2);
        if !den.is_zero() {
            return RationalFunction::make(&num, &den).unwrap();
        }
    }
}

pub fn random_nonzero_rf(rng: &mut impl Rng, nvars: usize, used: usize) -> RationalFunction {
    loop {
        let f = random_rf(rng, nvars, used);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_constant(rng: &mut impl Rng, nvars: usize) -> RationalFunction {
    RationalFunction::constant(nvars, rat(rng.gen_range(-3..=3)))
}

/// Grows `{1}` by up to `extra` monomials, each time adding a border
/// monomial whose divisors all lie in the current ideal.
pub fn random_order_ideal(rng: &mut impl Rng, n: usize, extra: usize) -> OrderIdeal {
    let mut o = OrderIdeal::trivial(n);
    for _ in 0..extra {
        let addable: Vec<Monomial> = o
            .border()
            .into_iter()
            .filter(|b| (0..n).all(|i| b.div_var(i).is_none_or(|t| o.contains(&t))))
            .collect();
        let pick = addable.choose(rng).unwrap().clone();
        let mut elems = o.elements().to_vec();
        elems.push(pick);
        o = OrderIdeal::new(elems).unwrap();
    }
    o
}

/// An operator with up to `terms` monomials of degree at most `deg`.
pub fn random_operator(
    rng: &mut impl Rng,
    n: usize,
    nvars: usize,
    ring: RingKind,
    deg: u16,
    terms: usize,
) -> Operator {
    let mut f = Operator::zero(n, nvars);
    for _ in 0..terms {
        let mut e = vec![0u16; n];
        for _ in 0..rng.gen_range(0..=deg) {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = match ring {
            RingKind::Commutative => random_constant(rng, nvars),
            RingKind::Weyl => random_rf(rng, nvars, n),
        };
        f = f.add(&Operator::term(Monomial::from_exponents(&e), c));
    }
    f
}

/// Random coefficients for every border element of `o`.
pub fn random_prebasis(rng: &mut impl Rng, o: &OrderIdeal, ring: RingKind) -> BorderPrebasis {
    let n = o.n();
    let coeffs = (0..o.border().len())
        .map(|_| {
            (0..o.len())
                .map(|_| match ring {
                    RingKind::Commutative => random_constant(rng, n),
                    RingKind::Weyl => random_rf(rng, n, n),
                })
                .collect()
        })
        .collect();
    BorderPrebasis::new(o.clone(), coeffs, ring, n).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, nvars: usize, used: usize) -> Matrix {
    let rows = (0..m)
        .map(|_| (0..m).map(|_| random_rf(rng, nvars, used)).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// A random invertible matrix: unit triangular factors with random entries.
pub fn random_gauge(rng: &mut impl Rng, m: usize, nvars: usize, used: usize) -> Matrix {
    let mut l = Matrix::identity(m, nvars);
    let mut u = Matrix::identity(m, nvars);
    for r in 0..m {
        for c in 0..r {
            l.set(r, c, random_rf(rng, nvars, used));
            u.set(c, r, random_rf(rng, nvars, used));
        }
        u.set(r, r, random_nonzero_rf(rng, nvars, used));
    }
    l.mul(&u)
}

/// A random matrix with constant nonzero determinant and linear polynomial
/// entries in its triangular factors, so the inverse stays polynomial.
pub fn random_unimodular_gauge(rng: &mut impl Rng, m: usize, nvars: usize, used: usize) -> Matrix {
    let mut l = Matrix::identity(m, nvars);
    let mut u = Matrix::identity(m, nvars);
    for r in 0..m {
        for c in 0..r {
            l.set(r, c, RationalFunction::from_poly(&random_poly(rng, nvars, used, 1, 2)));
            u.set(c, r, RationalFunction::from_poly(&random_poly(rng, nvars, used, 1, 2)));
        }
        let d = [-2, -1, 1, 2, 3][rng.gen_range(0..5)];
        u.set(r, r, RationalFunction::constant(nvars, rat(d)));
    }
    l.mul(&u)
}

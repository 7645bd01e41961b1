use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// An exponent vector. Ordered by degree-reverse-lexicographic order, with
/// variable 0 the largest variable.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The unit vector `e_i` of length `nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    /// `self / x_i`, if the exponent of `x_i` is positive.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[i] -= 1;
        Some(m)
    }

    pub fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// All monomials dividing `self`, including `1` and `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.nvars())];
        for (i, &e) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    next.push(m.with_exponent(i, k));
                }
            }
            out = next;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Multinomial-style binomial coefficient `C(n, k)` as u128.
pub(crate) fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_two_vars() {
        let x = Monomial::from_exponents(&[1, 0]);
        let y = Monomial::from_exponents(&[0, 1]);
        let xy2 = Monomial::from_exponents(&[1, 2]);
        let x2y = Monomial::from_exponents(&[2, 1]);
        assert!(x > y);
        assert!(x2y > xy2);
        assert!(Monomial::one(2) < y);
    }

    #[test]
    fn degrevlex_three_vars_differs_from_deglex() {
        // x1*x3 < x2^2 in degrevlex, the reverse holds in deglex
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        assert!(a < b);
    }

    #[test]
    fn divisors_count() {
        let m = Monomial::from_exponents(&[2, 1, 0]);
        assert_eq!(m.divisors().len(), 6);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}

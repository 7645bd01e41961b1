//! Exact arithmetic: rationals, sparse polynomials and rational functions.

mod coeff;
pub mod gcd;
mod monomial;
mod poly;
mod rational;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coeff::Coeff;
pub use monomial::Monomial;
pub(crate) use monomial::binomial;
pub use poly::{Poly, QPoly, ZPoly};
pub use rational::RationalFunction;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {0} is not a derivation variable")]
    NotADerivationVariable(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("at least one derivation variable is required")]
    NoDerivationVariable,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Variable names of a session. Derivation variables come first and occupy
/// indices `0..n`; parameters follow. The concatenated order is the
/// degrevlex variable order of every polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarTable {
    derivation: Vec<String>,
    params: Vec<String>,
}

impl VarTable {
    pub fn new<A: Into<String>, B: Into<String>>(
        derivation: impl IntoIterator<Item = A>,
        params: impl IntoIterator<Item = B>,
    ) -> Result<Self, FieldError> {
        let derivation: Vec<String> = derivation.into_iter().map(Into::into).collect();
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        if derivation.is_empty() {
            return Err(FieldError::NoDerivationVariable);
        }
        let mut seen = std::collections::HashSet::new();
        for name in derivation.iter().chain(params.iter()) {
            if !seen.insert(name.as_str()) {
                return Err(FieldError::DuplicateName(name.clone()));
            }
        }
        Ok(VarTable { derivation, params })
    }

    /// Total number of polynomial variables.
    pub fn nvars(&self) -> usize {
        self.derivation.len() + self.params.len()
    }

    /// Number of derivation variables `n`.
    pub fn n(&self) -> usize {
        self.derivation.len()
    }

    pub fn derivation_vars(&self) -> &[String] {
        &self.derivation
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn name(&self, i: usize) -> &str {
        if i < self.derivation.len() {
            &self.derivation[i]
        } else {
            &self.params[i - self.derivation.len()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.derivation
            .iter()
            .chain(self.params.iter())
            .position(|v| v == name)
    }

    pub fn is_derivation(&self, i: usize) -> bool {
        i < self.derivation.len()
    }

    /// A table with extra parameters appended. Values built over `self` are
    /// moved over with `extend_vars(extra.len())`.
    pub fn with_params<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = S>,
    ) -> Result<Self, FieldError> {
        let mut params = self.params.clone();
        params.extend(extra.into_iter().map(Into::into));
        VarTable::new(self.derivation.clone(), params)
    }

    pub fn var(&self, name: &str) -> Result<RationalFunction, FieldError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| FieldError::UnknownVariable(name.to_string()))?;
        Ok(RationalFunction::var(self.nvars(), i))
    }
}

/// Derivative with respect to derivation variable `i`.
pub fn rf_derive(
    f: &RationalFunction,
    i: usize,
    vars: &VarTable,
) -> Result<RationalFunction, FieldError> {
    if !vars.is_derivation(i) {
        return Err(FieldError::NotADerivationVariable(i));
    }
    if f.nvars() != vars.nvars() {
        return Err(FieldError::ArityMismatch {
            left: f.nvars(),
            right: vars.nvars(),
        });
    }
    Ok(f.derive(i))
}

/// The integer `n` as a rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_table_rejects_duplicates() {
        assert_eq!(
            VarTable::new(["x", "y"], ["x"]),
            Err(FieldError::DuplicateName("x".into()))
        );
        assert_eq!(
            VarTable::new(Vec::<&str>::new(), ["e"]),
            Err(FieldError::NoDerivationVariable)
        );
    }

    #[test]
    fn derive_rejects_parameters() {
        let vt = VarTable::new(["x1", "x2"], ["s12"]).unwrap();
        let s = vt.var("s12").unwrap();
        assert_eq!(
            rf_derive(&s, 2, &vt),
            Err(FieldError::NotADerivationVariable(2))
        );
    }

    #[test]
    fn derive_of_parameter_quotient() {
        let vt = VarTable::new(["x1", "x2"], ["s12"]).unwrap();
        let f = vt.var("s12").unwrap().div(&vt.var("x1").unwrap()).unwrap();
        assert!(rf_derive(&f, 1, &vt).unwrap().is_zero());
    }
}

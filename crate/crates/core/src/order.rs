//! Order ideals, borders and the index function.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Monomial;
use crate::weyl::Operator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("the set is not an order ideal")]
    NotOrderIdeal,
    #[error("exponent vectors have inconsistent lengths")]
    ArityMismatch,
    #[error("the index of the zero operator is undefined")]
    ZeroOperator,
}

/// True iff `set` contains the zero vector and is closed under taking
/// divisors.
pub fn is_order_ideal<'a>(set: impl IntoIterator<Item = &'a Monomial>) -> bool {
    let set: HashSet<&Monomial> = set.into_iter().collect();
    let Some(first) = set.iter().next() else {
        return false;
    };
    let n = first.nvars();
    if set.iter().any(|m| m.nvars() != n) || !set.contains(&Monomial::one(n)) {
        return false;
    }
    set.iter().all(|m| {
        m.support()
            .all(|i| set.contains(&m.div_var(i).unwrap()))
    })
}

/// A finite order ideal `t_1 = 1, t_2, ..., t_m`, enumerated in ascending
/// degrevlex order. The enumeration fixes the row and column order of every
/// matrix built over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u16>>", into = "Vec<Vec<u16>>")]
pub struct OrderIdeal {
    n: usize,
    elements: Vec<Monomial>,
    #[serde(skip)]
    position: HashMap<Monomial, usize>,
}

impl TryFrom<Vec<Vec<u16>>> for OrderIdeal {
    type Error = OrderError;

    fn try_from(v: Vec<Vec<u16>>) -> Result<Self, OrderError> {
        OrderIdeal::new(v.iter().map(|e| Monomial::from_exponents(e)))
    }
}

impl From<OrderIdeal> for Vec<Vec<u16>> {
    fn from(o: OrderIdeal) -> Self {
        o.elements.iter().map(|m| m.exponents().to_vec()).collect()
    }
}

impl OrderIdeal {
    pub fn new(elements: impl IntoIterator<Item = Monomial>) -> Result<Self, OrderError> {
        let set: BTreeSet<Monomial> = elements.into_iter().collect();
        let n = set.iter().next().ok_or(OrderError::NotOrderIdeal)?.nvars();
        if set.iter().any(|m| m.nvars() != n) {
            return Err(OrderError::ArityMismatch);
        }
        if !is_order_ideal(set.iter()) {
            return Err(OrderError::NotOrderIdeal);
        }
        let elements: Vec<Monomial> = set.into_iter().collect();
        let position = elements
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Ok(OrderIdeal {
            n,
            elements,
            position,
        })
    }

    pub fn from_exponents(vectors: &[&[u16]]) -> Result<Self, OrderError> {
        Self::new(vectors.iter().map(|e| Monomial::from_exponents(e)))
    }

    /// `{1}` in `n` variables.
    pub fn trivial(n: usize) -> Self {
        Self::new([Monomial::one(n)]).unwrap()
    }

    /// All monomials dividing `m`.
    pub fn box_below(m: &Monomial) -> Self {
        Self::new(m.divisors()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.position.contains_key(m)
    }

    /// Position of `m` in the enumeration.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    /// `∂O = (X_1 O ∪ ... ∪ X_n O) \ O`, ascending.
    pub fn border(&self) -> Vec<Monomial> {
        let set: HashSet<Monomial> = self.elements.iter().cloned().collect();
        border_of(&set, self.n)
    }

    /// The `k`-th border `∂^k O`; `∂^0 O = O`.
    pub fn kth_border(&self, k: u32) -> Vec<Monomial> {
        let mut closure: HashSet<Monomial> = self.elements.iter().cloned().collect();
        let mut layer: Vec<Monomial> = self.elements.clone();
        for _ in 0..k {
            layer = border_of(&closure, self.n);
            closure.extend(layer.iter().cloned());
        }
        layer
    }

    /// Minimal generators of the complement: `b ∉ O` with `b / X_i ∈ O`
    /// for every `i` with positive exponent.
    pub fn corners(&self) -> Vec<Monomial> {
        self.border()
            .into_iter()
            .filter(|b| b.support().all(|i| self.contains(&b.div_var(i).unwrap())))
            .collect()
    }

    /// Smallest `k` with `t ∈ ∂^k O`.
    pub fn index_mono(&self, t: &Monomial) -> u32 {
        IndexCache::new(self).index(t)
    }

    /// Maximal index of a monomial in the support of `f`.
    pub fn index_op(&self, f: &Operator) -> Result<u32, OrderError> {
        if f.is_zero() {
            return Err(OrderError::ZeroOperator);
        }
        let mut cache = IndexCache::new(self);
        Ok(f.support().map(|m| cache.index(m)).max().unwrap())
    }
}

fn border_of(set: &HashSet<Monomial>, n: usize) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for t in set {
        for i in 0..n {
            let b = t.times_var(i);
            if !set.contains(&b) {
                out.insert(b);
            }
        }
    }
    out.into_iter().collect()
}

/// Border closures grown on demand, for repeated index queries.
pub(crate) struct IndexCache {
    n: usize,
    closure: HashSet<Monomial>,
    index: HashMap<Monomial, u32>,
    level: u32,
    max_degree: u32,
}

impl IndexCache {
    pub(crate) fn new(o: &OrderIdeal) -> Self {
        let closure: HashSet<Monomial> = o.elements.iter().cloned().collect();
        let index = closure.iter().map(|m| (m.clone(), 0)).collect();
        let max_degree = o.elements.iter().map(|m| m.degree()).max().unwrap_or(0);
        IndexCache {
            n: o.n,
            closure,
            index,
            level: 0,
            max_degree,
        }
    }

    pub(crate) fn index(&mut self, t: &Monomial) -> u32 {
        assert_eq!(t.nvars(), self.n, "monomial arity mismatch");
        loop {
            if let Some(&k) = self.index.get(t) {
                return k;
            }
            // every element of the k-th closure has degree at most
            // max_degree + k, so a monomial of higher degree is further out
            let needed = t.degree().saturating_sub(self.max_degree);
            while self.level < needed {
                self.grow();
            }
            if self.index.contains_key(t) {
                continue;
            }
            self.grow();
        }
    }

    fn grow(&mut self) {
        self.level += 1;
        let layer = border_of(&self.closure, self.n);
        for b in layer {
            self.index.insert(b.clone(), self.level);
            self.closure.insert(b);
        }
    }
}

//! Multiplication matrices and the border basis criteria.

use std::ops::Deref;

use crate::division::{border_divide, BorderPrebasis, DivisionError};
use crate::field::{Monomial, RationalFunction};
use crate::matrix::Matrix;
use crate::order::OrderIdeal;
use crate::weyl::{Operator, RingKind};

/// Formal multiplication matrices `M_1..M_n` of a prebasis. Column `k` of
/// `M_i` holds the coordinates of `X_i t_k` (or `∂_i t_k`).
#[derive(Debug, Clone, PartialEq)]
pub struct MultMatrices {
    pub mats: Vec<Matrix>,
    pub order: OrderIdeal,
    pub ring: RingKind,
}

impl MultMatrices {
    /// The matrices with rows and columns listed in `basis` order instead
    /// of the enumeration of the order ideal.
    pub fn in_basis(&self, basis: &[Monomial]) -> Option<Vec<Matrix>> {
        if basis.len() != self.order.len() {
            return None;
        }
        let perm: Option<Vec<usize>> = basis.iter().map(|t| self.order.position(t)).collect();
        let perm = perm?;
        Some(self.mats.iter().map(|m| m.permute(&perm)).collect())
    }
}

pub fn mult_matrices(g: &BorderPrebasis) -> MultMatrices {
    let order = g.order();
    let m = order.len();
    let mut mats = Vec::with_capacity(g.n());
    for i in 0..g.n() {
        let mut mi = Matrix::zeros(m, m, g.nvars());
        for (k, t) in order.elements().iter().enumerate() {
            let shifted = t.times_var(i);
            match order.position(&shifted) {
                Some(r) => mi.set(r, k, RationalFunction::one(g.nvars())),
                None => {
                    let s = g.marker_position(&shifted).expect("X_i t_k lies in the border");
                    for (r, c) in g.coeff_column(s).iter().enumerate() {
                        mi.set(r, k, c.clone());
                    }
                }
            }
        }
        mats.push(mi);
    }
    MultMatrices {
        mats,
        order: order.clone(),
        ring: g.ring(),
    }
}

/// First entry where the criterion fails.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionWitness {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    /// Left side minus right side at `(row, col)`.
    pub residual: RationalFunction,
}

/// Checks the criterion of the prebasis ring: pairwise commuting matrices
/// in the commutative case, `[M_i, M_j] = ∂_j•M_i − ∂_i•M_j` in the Weyl
/// case.
pub fn check_criterion(g: &BorderPrebasis) -> Result<(), CriterionWitness> {
    let mm = mult_matrices(g);
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = mm.mats[i].commutator(&mm.mats[j]);
            let residual = match g.ring() {
                RingKind::Commutative => lhs,
                RingKind::Weyl => {
                    let rhs = mm.mats[i].derive(j).sub(&mm.mats[j].derive(i));
                    lhs.sub(&rhs)
                }
            };
            if let Some(w) = first_nonzero(&residual) {
                return Err(CriterionWitness {
                    i,
                    j,
                    row: w.0,
                    col: w.1,
                    residual: residual.get(w.0, w.1).clone(),
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

/// True iff the commutative prebasis is a border basis.
pub fn is_border_basis_comm(g: &BorderPrebasis) -> bool {
    assert_eq!(g.ring(), RingKind::Commutative);
    check_criterion(g).is_ok()
}

/// True iff the Weyl prebasis is a border basis of its ideal.
pub fn is_border_basis_weyl(g: &BorderPrebasis) -> bool {
    assert_eq!(g.ring(), RingKind::Weyl);
    check_criterion(g).is_ok()
}

/// A prebasis that passed the criterion. Normal forms are only defined for
/// these.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderBasis(BorderPrebasis);

impl BorderPrebasis {
    pub fn verify(&self) -> Result<BorderBasis, CriterionWitness> {
        check_criterion(self)?;
        Ok(BorderBasis(self.clone()))
    }
}

impl Deref for BorderBasis {
    type Target = BorderPrebasis;

    fn deref(&self) -> &BorderPrebasis {
        &self.0
    }
}

impl BorderBasis {
    pub fn prebasis(&self) -> &BorderPrebasis {
        &self.0
    }

    pub fn into_prebasis(self) -> BorderPrebasis {
        self.0
    }
}

/// Coordinates of the residue class of `f` in the basis `[t_1],...,[t_m]`.
pub fn normal_form(f: &Operator, b: &BorderBasis) -> Result<Vec<RationalFunction>, DivisionError> {
    Ok(border_divide(f, b)?.remainder)
}

pub fn membership(f: &Operator, b: &BorderBasis) -> Result<bool, DivisionError> {
    Ok(normal_form(f, b)?.iter().all(|c| c.is_zero()))
}

/// Mutual membership of the generators.
pub fn ideal_equal(a: &BorderBasis, b: &BorderBasis) -> Result<bool, DivisionError> {
    if a.ring() != b.ring() || a.n() != b.n() || a.nvars() != b.nvars() {
        return Ok(false);
    }
    for g in a.generators() {
        if !membership(&g, b)? {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !membership(&g, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The elements marked by the corners of the order ideal.
pub fn corner_subset(b: &BorderBasis) -> Vec<(Monomial, Operator)> {
    b.order()
        .corners()
        .into_iter()
        .map(|c| {
            let j = b.marker_position(&c).expect("corners lie in the border");
            (c, b.generator(j))
        })
        .collect()
}

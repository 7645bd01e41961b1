//! Pfaffian systems `∂_i • F = A_i · F`: integrability, gauge transforms
//! and the passage between connection matrices and border bases.

use thiserror::Error;

use crate::basis::{first_nonzero, mult_matrices, normal_form, BorderBasis, CriterionWitness};
use crate::division::{BorderPrebasis, DivisionError, PrebasisError};
use crate::field::{Monomial, RationalFunction};
use crate::matrix::{Matrix, MatrixError};
use crate::order::OrderIdeal;
use crate::weyl::{Operator, RingKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectError {
    #[error("connection matrices must be square of one common size, one per derivation")]
    Shape,
    #[error("the connection is not integrable")]
    NotIntegrable,
    #[error("the basis label is not an order ideal of derivative monomials")]
    BasisNotMonomial,
    #[error("row {k} of A_{j} contradicts the basis label")]
    LabelInconsistent { j: usize, k: usize },
    #[error("factorizations of border monomial {0:?} give different rows")]
    AmbiguousFactorization(Monomial),
    #[error("matrices {i} and {j} do not commute")]
    NotCommuting { i: usize, j: usize },
    #[error("matrix entries must be constants")]
    NotConstant,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Division(#[from] DivisionError),
    #[error(transparent)]
    Prebasis(#[from] PrebasisError),
}

/// What the components of `F` are.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisLabel {
    /// `F = (t_1 • φ, ..., t_m • φ)` for the listed monomials.
    Monomials(Vec<Monomial>),
    /// Free-form names of the components.
    Text(Vec<String>),
}

impl BasisLabel {
    pub fn len(&self) -> usize {
        match self {
            BasisLabel::Monomials(v) => v.len(),
            BasisLabel::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Connection matrices `A_1..A_n` with their integrability status, always
/// computed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionSystem {
    mats: Vec<Matrix>,
    label: BasisLabel,
    integrable: bool,
}

impl ConnectionSystem {
    pub fn new(mats: Vec<Matrix>, label: BasisLabel) -> Result<Self, ConnectError> {
        let first = mats.first().ok_or(ConnectError::Shape)?;
        let m = first.rows();
        let nvars = first.nvars();
        if mats
            .iter()
            .any(|a| !a.is_square() || a.rows() != m || a.nvars() != nvars)
            || label.len() != m
            || mats.len() > nvars
        {
            return Err(ConnectError::Shape);
        }
        if let BasisLabel::Monomials(v) = &label {
            if v.iter().any(|t| t.nvars() != mats.len()) {
                return Err(ConnectError::Shape);
            }
        }
        let integrable = integrability_witness(&mats).is_none();
        Ok(ConnectionSystem {
            mats,
            label,
            integrable,
        })
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn is_integrable(&self) -> bool {
        self.integrable
    }

    /// Number of derivations.
    pub fn n(&self) -> usize {
        self.mats.len()
    }

    /// Size of the matrices.
    pub fn rank(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn nvars(&self) -> usize {
        self.mats[0].nvars()
    }

    pub fn with_label(&self, label: BasisLabel) -> Result<Self, ConnectError> {
        Self::new(self.mats.clone(), label)
    }
}

fn integrability_witness(mats: &[Matrix]) -> Option<CriterionWitness> {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let lhs = mats[i].commutator(&mats[j]);
            let rhs = mats[j].derive(i).sub(&mats[i].derive(j));
            let residual = lhs.sub(&rhs);
            if let Some((row, col)) = first_nonzero(&residual) {
                return Some(CriterionWitness {
                    i,
                    j,
                    row,
                    col,
                    residual: residual.get(row, col).clone(),
                });
            }
        }
    }
    None
}

/// Checks `[A_i, A_j] = ∂_i•A_j − ∂_j•A_i` for all `i < j`, returning the
/// first violating entry on failure.
pub fn check_integrability(c: &ConnectionSystem) -> Result<(), CriterionWitness> {
    match integrability_witness(&c.mats) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// `[A_i, A_j] = 0` for all `i < j`.
pub fn commuting_check(c: &ConnectionSystem) -> bool {
    pairwise_commuting(&c.mats).is_none()
}

fn pairwise_commuting(mats: &[Matrix]) -> Option<(usize, usize)> {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutator(&mats[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// `∂_i•A_j = ∂_j•A_i` for all `i < j`.
pub fn is_closed(c: &ConnectionSystem) -> bool {
    let a = &c.mats;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[j].derive(i) != a[i].derive(j) {
                return false;
            }
        }
    }
    true
}

/// Gauge transform `Ã_i = g A_i g⁻¹ + (∂_i g) g⁻¹` for the new unknowns
/// `F̃ = g F`, labelled by `label`.
pub fn gauge(
    c: &ConnectionSystem,
    g: &Matrix,
    label: BasisLabel,
) -> Result<ConnectionSystem, ConnectError> {
    if !g.is_square() || g.rows() != c.rank() || g.nvars() != c.nvars() {
        return Err(ConnectError::Shape);
    }
    let ginv = g.inverse()?;
    let mats = c
        .mats
        .iter()
        .enumerate()
        .map(|(i, a)| g.mul(a).mul(&ginv).add(&g.derive(i).mul(&ginv)))
        .collect();
    ConnectionSystem::new(mats, label)
}

/// The connection matrices `A_i = M_iᵀ` of a border basis, labelled by its
/// order ideal.
pub fn pfaffian_from_basis(b: &BorderBasis) -> ConnectionSystem {
    let mm = mult_matrices(b);
    let mats = mm.mats.iter().map(|m| m.transpose()).collect();
    ConnectionSystem::new(mats, BasisLabel::Monomials(b.order().elements().to_vec()))
        .expect("multiplication matrices are square")
}

/// The marked operators `P_b = b − (row k of A_j) · (t_1..t_m)ᵀ` for
/// `b = ∂_j t_k` in the border of `o`.
pub fn ideal_from_connection(
    c: &ConnectionSystem,
    o: &OrderIdeal,
) -> Result<BorderPrebasis, ConnectError> {
    let BasisLabel::Monomials(label) = c.label() else {
        return Err(ConnectError::BasisNotMonomial);
    };
    if label.len() != o.len() || o.n() != c.n() {
        return Err(ConnectError::BasisNotMonomial);
    }
    let perm: Option<Vec<usize>> = o
        .elements()
        .iter()
        .map(|t| label.iter().position(|l| l == t))
        .collect();
    let perm = perm.ok_or(ConnectError::BasisNotMonomial)?;
    if !c.is_integrable() {
        return Err(ConnectError::NotIntegrable);
    }
    let a: Vec<Matrix> = c.mats.iter().map(|m| m.permute(&perm)).collect();
    let nvars = c.nvars();
    let one = RationalFunction::one(nvars);

    for (j, aj) in a.iter().enumerate() {
        for (k, t) in o.elements().iter().enumerate() {
            if let Some(r) = o.position(&t.times_var(j)) {
                let consistent = (0..o.len()).all(|s| {
                    let e = aj.get(k, s);
                    if s == r {
                        *e == one
                    } else {
                        e.is_zero()
                    }
                });
                if !consistent {
                    return Err(ConnectError::LabelInconsistent { j, k });
                }
            }
        }
    }

    let mut coeffs = Vec::with_capacity(o.border().len());
    for b in o.border() {
        let mut factorizations = (0..o.n()).filter_map(|j| {
            let t = b.div_var(j)?;
            o.position(&t).map(|k| (j, k))
        });
        let (j, k) = factorizations.next().expect("border monomials factor through O");
        let row = a[j].row(k).to_vec();
        if let Some((j2, k2)) = factorizations.next() {
            if a[j2].row(k2) != row.as_slice() {
                return Err(ConnectError::AmbiguousFactorization(b.clone()));
            }
        }
        coeffs.push(row);
    }
    Ok(BorderPrebasis::new(o.clone(), coeffs, RingKind::Weyl, nvars)?)
}

/// `A_i = (1/x_i) M_{θ_i}ᵀ` for pairwise commuting constant matrices of the
/// Euler operators `θ_i = x_i ∂_i`.
pub fn frobenius_connection(
    mtheta: &[Matrix],
    label: BasisLabel,
) -> Result<ConnectionSystem, ConnectError> {
    let n = mtheta.len();
    if mtheta.iter().any(|m| !m.is_constant_in(n)) {
        return Err(ConnectError::NotConstant);
    }
    if let Some((i, j)) = pairwise_commuting(mtheta) {
        return Err(ConnectError::NotCommuting { i, j });
    }
    let mats = mtheta
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let xi = RationalFunction::var(m.nvars(), i).inv().unwrap();
            m.transpose().scale(&xi)
        })
        .collect();
    ConnectionSystem::new(mats, label)
}

/// `A_i = M_iᵀ` for pairwise commuting constant matrices.
pub fn constant_connection(
    mc: &[Matrix],
    label: BasisLabel,
) -> Result<ConnectionSystem, ConnectError> {
    let n = mc.len();
    if mc.iter().any(|m| !m.is_constant_in(n)) {
        return Err(ConnectError::NotConstant);
    }
    if let Some((i, j)) = pairwise_commuting(mc) {
        return Err(ConnectError::NotCommuting { i, j });
    }
    ConnectionSystem::new(mc.iter().map(|m| m.transpose()).collect(), label)
}

/// `B_i = A_i / ε` when every entry of every `B_i` is free of `ε`.
pub fn epsilon_factor(c: &ConnectionSystem, eps: usize) -> Option<Vec<Matrix>> {
    let inv = RationalFunction::var(c.nvars(), eps).inv().unwrap();
    let mut out = Vec::with_capacity(c.n());
    for a in &c.mats {
        let b = a.scale(&inv);
        if b.entries().iter().any(|e| e.depends_on(eps)) {
            return None;
        }
        out.push(b);
    }
    Some(out)
}

/// Gauge matrix from the order ideal of `b` to `target`: row `k` holds the
/// normal form of the `k`-th target monomial.
pub fn gauge_matrix_to(b: &BorderBasis, target: &OrderIdeal) -> Result<Matrix, ConnectError> {
    if target.len() != b.order().len() || target.n() != b.n() {
        return Err(ConnectError::Shape);
    }
    let rows: Result<Vec<Vec<RationalFunction>>, DivisionError> = target
        .elements()
        .iter()
        .map(|t| normal_form(&Operator::monomial(t.clone(), b.nvars()), b))
        .collect();
    Ok(Matrix::from_rows(rows?)?)
}

/// Rewrites the Pfaffian system of `b` over the target order ideal and
/// reads off the border prebasis there.
pub fn gauge_to_order_ideal(
    b: &BorderBasis,
    target: &OrderIdeal,
) -> Result<(Matrix, ConnectionSystem, BorderPrebasis), ConnectError> {
    let g = gauge_matrix_to(b, target)?;
    let c = pfaffian_from_basis(b);
    let moved = gauge(&c, &g, BasisLabel::Monomials(target.elements().to_vec()))?;
    let p = ideal_from_connection(&moved, target)?;
    Ok((g, moved, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn zero_connection_is_integrable() {
        let z = Matrix::zeros(2, 2, 2);
        let c = ConnectionSystem::new(vec![z.clone(), z], BasisLabel::Text(vec!["a".into(), "b".into()]))
            .unwrap();
        assert!(check_integrability(&c).is_ok());
        assert!(is_closed(&c));
        assert!(commuting_check(&c));
    }

    #[test]
    fn noncommuting_constants_fail_with_witness() {
        let a1 = Matrix::from_ints(&[&[0, 1], &[0, 0]], 2);
        let a2 = Matrix::from_ints(&[&[0, 0], &[1, 0]], 2);
        let label = BasisLabel::Text(vec!["a".into(), "b".into()]);
        let c = ConnectionSystem::new(vec![a1.clone(), a2.clone()], label.clone()).unwrap();
        let w = check_integrability(&c).unwrap_err();
        assert_eq!((w.i, w.j, w.row, w.col), (0, 1, 0, 0));
        assert_eq!(w.residual, RationalFunction::one(2));
        assert!(!commuting_check(&c));
        assert_eq!(
            constant_connection(&[a1, a2], label),
            Err(ConnectError::NotCommuting { i: 0, j: 1 })
        );
    }

    #[test]
    fn rank_one_round_trip() {
        // A = [f'/f] for f = x^2 + 1 gives ∂ - f'/f, which annihilates f
        let x = RationalFunction::var(1, 0);
        let f = x.mul(&x).add(&RationalFunction::one(1));
        let a = f.derive(0).div(&f).unwrap();
        let c = ConnectionSystem::new(
            vec![Matrix::from_rows(vec![vec![a.clone()]]).unwrap()],
            BasisLabel::Monomials(vec![Monomial::one(1)]),
        )
        .unwrap();
        let p = ideal_from_connection(&c, &OrderIdeal::trivial(1)).unwrap();
        let g = &p.generators()[0];
        assert_eq!(g.coeff(&Monomial::one(1)), a.neg());
        assert!(g.apply(&f).is_zero());
        let back = pfaffian_from_basis(&p.verify().unwrap());
        assert_eq!(back, c);
    }

    #[test]
    fn frobenius_example() {
        let mt = Matrix::from_ints(&[&[0, -1], &[1, 1]], 1);
        let c = frobenius_connection(&[mt], BasisLabel::Text(vec!["f".into(), "θf".into()])).unwrap();
        let x = RationalFunction::var(1, 0).inv().unwrap();
        let z = RationalFunction::zero(1);
        let expected = Matrix::from_rows(vec![vec![z, x.clone()], vec![x.neg(), x]]).unwrap();
        assert_eq!(c.mats()[0], expected);
        assert!(c.is_integrable());
    }

    #[test]
    fn epsilon_detection() {
        // A = [[e + e^2 x]] is not e-factorized, [[e x]] is
        let e = RationalFunction::var(2, 1);
        let x = RationalFunction::var(2, 0);
        let bad = Matrix::from_rows(vec![vec![e.add(&e.mul(&e).mul(&x))]]).unwrap();
        let good = Matrix::from_rows(vec![vec![e.mul(&x).scale_by(&rat(3))]]).unwrap();
        let label = BasisLabel::Text(vec!["f".into()]);
        let cb = ConnectionSystem::new(vec![bad], label.clone()).unwrap();
        let cg = ConnectionSystem::new(vec![good], label).unwrap();
        assert!(epsilon_factor(&cb, 1).is_none());
        let b = epsilon_factor(&cg, 1).unwrap();
        assert_eq!(b[0].get(0, 0), &x.scale_by(&rat(3)));
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let x = RationalFunction::var(1, 0);
        let a = Matrix::from_rows(vec![vec![x.clone(), RationalFunction::one(1)], vec![x.mul(&x), x.inv().unwrap()]])
            .unwrap();
        let label = BasisLabel::Text(vec!["a".into(), "b".into()]);
        let c = ConnectionSystem::new(vec![a], label.clone()).unwrap();
        assert_eq!(gauge(&c, &Matrix::identity(2, 1), label).unwrap(), c);
    }
}

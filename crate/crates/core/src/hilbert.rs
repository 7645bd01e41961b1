//! Affine charts of the Hilbert scheme of points and commuting matrices.

use crate::basis::mult_matrices;
use crate::division::BorderPrebasis;
use crate::field::{FieldError, QPoly, RationalFunction, VarTable};
use crate::order::OrderIdeal;
use crate::weyl::RingKind;

/// Generic prebasis of an order ideal together with the commutator
/// entries of its multiplication matrices.
#[derive(Debug, Clone)]
pub struct SymbolicChart {
    pub order: OrderIdeal,
    /// Ring variables followed by the coefficient parameters.
    pub vars: VarTable,
    /// `coeff_names[j][i]` names `c_{i,j}`, the coefficient of `t_i` in `g_j`.
    pub coeff_names: Vec<Vec<String>>,
    pub prebasis: BorderPrebasis,
    /// Entries of `M_i M_j − M_j M_i` for `i < j`, row by row.
    pub commutator_polys: Vec<QPoly>,
}

impl SymbolicChart {
    /// Index of a coefficient parameter in `vars`.
    pub fn param(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name)
    }
}

fn fresh_name(base: &str, taken: &VarTable, extra: &[String]) -> String {
    let mut name = base.to_string();
    while taken.index_of(&name).is_some() || extra.contains(&name) {
        name.push('_');
    }
    name
}

/// Default parameter names `c{i}_{j}` (1-based) for the coefficient of
/// `t_i` in the element marked by the `j`-th border monomial.
pub fn default_coeff_names(o: &OrderIdeal, vars: &VarTable) -> Vec<Vec<String>> {
    let mut all = Vec::new();
    let mut grid = Vec::new();
    for j in 0..o.border().len() {
        let mut row = Vec::new();
        for i in 0..o.len() {
            let name = fresh_name(&format!("c{}_{}", i + 1, j + 1), vars, &all);
            all.push(name.clone());
            row.push(name);
        }
        grid.push(row);
    }
    grid
}

/// Commutative prebasis `g_j = b_j − Σ c_{i,j} t_i` with fresh symbolic
/// coefficients appended to `vars` as parameters.
pub fn generic_prebasis(
    o: &OrderIdeal,
    vars: &VarTable,
) -> Result<(VarTable, Vec<Vec<String>>, BorderPrebasis), FieldError> {
    let names = default_coeff_names(o, vars);
    let (vt, g) = generic_prebasis_named(o, vars, &names)?;
    Ok((vt, names, g))
}

/// As [`generic_prebasis`] with caller-chosen names, `names[j][i]` for the
/// coefficient of `t_i` in `g_j`.
pub fn generic_prebasis_named(
    o: &OrderIdeal,
    vars: &VarTable,
    names: &[Vec<String>],
) -> Result<(VarTable, BorderPrebasis), FieldError> {
    assert_eq!(vars.n(), o.n(), "ring variables must match the order ideal");
    let vt = vars.with_params(names.iter().flatten().cloned())?;
    let nvars = vt.nvars();
    let coeffs: Vec<Vec<RationalFunction>> = names
        .iter()
        .map(|row| {
            row.iter()
                .map(|name| RationalFunction::var(nvars, vt.index_of(name).unwrap()))
                .collect()
        })
        .collect();
    let g = BorderPrebasis::new(o.clone(), coeffs, RingKind::Commutative, nvars)
        .expect("generic coefficients have the right shape");
    Ok((vt, g))
}

fn commutator_entries(g: &BorderPrebasis) -> Vec<QPoly> {
    let mm = mult_matrices(g);
    let mut out = Vec::new();
    for i in 0..mm.mats.len() {
        for j in i + 1..mm.mats.len() {
            let c = mm.mats[i].commutator(&mm.mats[j]);
            out.extend(c.entries().iter().map(|e| {
                debug_assert!(e.is_polynomial());
                e.num()
            }));
        }
    }
    out
}

/// Chart of `o` with default coefficient names.
pub fn chart_ideal(o: &OrderIdeal, vars: &VarTable) -> Result<SymbolicChart, FieldError> {
    let names = default_coeff_names(o, vars);
    chart_ideal_named(o, vars, names)
}

pub fn chart_ideal_named(
    o: &OrderIdeal,
    vars: &VarTable,
    names: Vec<Vec<String>>,
) -> Result<SymbolicChart, FieldError> {
    let (vt, g) = generic_prebasis_named(o, vars, &names)?;
    let commutator_polys = commutator_entries(&g);
    Ok(SymbolicChart {
        order: o.clone(),
        vars: vt,
        coeff_names: names,
        prebasis: g,
        commutator_polys,
    })
}

/// Entries of all pairwise commutators of `n` generic `m × m` matrices.
/// Matrix `k` has entries `m{k}_{r}{c}` (1-based); the returned table lists
/// them as ring variables.
pub fn commuting_variety_gens(n: usize, m: usize) -> (VarTable, Vec<QPoly>) {
    assert!(n >= 2, "at least two matrices are needed");
    let names: Vec<String> = (1..=n)
        .flat_map(|k| {
            (1..=m).flat_map(move |r| (1..=m).map(move |c| format!("m{k}_{r}{c}")))
        })
        .collect();
    let nv = names.len();
    let vt = VarTable::new(names, Vec::<String>::new()).expect("distinct names");
    let var = |k: usize, r: usize, c: usize| QPoly::var(nv, k * m * m + r * m + c);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for r in 0..m {
                for c in 0..m {
                    let mut e = QPoly::zero(nv);
                    for s in 0..m {
                        e = e.add(&var(a, r, s).mul(&var(b, s, c)));
                        e = e.sub(&var(b, r, s).mul(&var(a, s, c)));
                    }
                    out.push(e);
                }
            }
        }
    }
    (vt, out)
}

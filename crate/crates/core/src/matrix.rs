//! Dense matrices over the rational function field.

use std::fmt;

use thiserror::Error;

use crate::field::{BigRational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is singular: no pivot in column {column}")]
    SingularMatrix { column: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<RationalFunction>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Matrix {
            rows,
            cols,
            nvars,
            data: vec![RationalFunction::zero(nvars); rows * cols],
        }
    }

    pub fn identity(m: usize, nvars: usize) -> Self {
        let mut id = Self::zeros(m, m, nvars);
        for i in 0..m {
            id.set(i, i, RationalFunction::one(nvars));
        }
        id
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        if r == 0 {
            return Err(MatrixError::Shape("empty matrix".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        let nvars = rows[0][0].nvars();
        if rows.iter().flatten().any(|e| e.nvars() != nvars) {
            return Err(MatrixError::Shape("entries over different fields".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            nvars,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix, mainly for tests and fixtures.
    pub fn from_ints(rows: &[&[i64]], nvars: usize) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| RationalFunction::from_int(nvars, v)).collect())
                .collect(),
        )
        .expect("well-formed integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalFunction {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        assert_eq!(v.nvars(), self.nvars, "entry arity mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RationalFunction] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<RationalFunction> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// True when no entry depends on the first `n` variables.
    pub fn is_constant_in(&self, n: usize) -> bool {
        self.data.iter().all(|e| (0..n).all(|i| !e.depends_on(i)))
    }

    fn same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols && self.nvars == other.nvars,
            "matrix shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let data: Vec<RationalFunction> = self.data.iter().map(f).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            nvars: data.first().map_or(self.nvars, |e| e.nvars()),
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        assert_eq!(self.nvars, other.nvars, "matrix arity mismatch");
        let mut out = Self::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RationalFunction::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map(|e| e.mul(c))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.map(|e| e.scale_by(c))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise partial derivative in polynomial variable `var`.
    pub fn derive(&self, var: usize) -> Self {
        self.map(|e| e.derive(var))
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Inverse by Gauss–Jordan elimination, taking the first nonzero entry
    /// in each column as pivot.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape("inverse of a non-square matrix".into()));
        }
        let m = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(m, self.nvars).to_rows();
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(MatrixError::SingularMatrix { column: col })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv().expect("pivot is nonzero");
            for k in 0..m {
                a[col][k] = a[col][k].mul(&p);
                inv[col][k] = inv[col][k].mul(&p);
            }
            for r in 0..m {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..m {
                    if !a[col][k].is_zero() {
                        a[r][k] = a[r][k].sub(&f.mul(&a[col][k]));
                    }
                    if !inv[col][k].is_zero() {
                        inv[r][k] = inv[r][k].sub(&f.mul(&inv[col][k]));
                    }
                }
            }
        }
        Ok(Matrix::from_rows(inv).unwrap())
    }

    /// Moves the entries into a field with `extra` more variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        self.map(|e| e.extend_vars(extra))
    }

    /// Conjugates by a permutation: entry `(r, c)` of the result is entry
    /// `(perm[r], perm[c])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols, self.nvars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(perm[r], perm[c]).clone());
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| format!("{e:?}")).collect();
            writeln!(f, "[{}]", row.join(" | "))?;
        }
        Ok(())
    }
}

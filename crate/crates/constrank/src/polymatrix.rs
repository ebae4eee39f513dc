//! Matrices with polynomial entries and their exact determinants.
//!
//! Univariate pencils `M + s D` go through fraction-free Bareiss
//! elimination, whose divisions are exact in the polynomial ring.
//! Multivariate matrices (a subspace's symbolic element) use cofactor
//! expansion memoized on the surviving column set, which shares work across
//! the exponentially many branches and keeps every intermediate sparse.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::multipoly::MultiPoly;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<P> {
    rows: usize,
    cols: usize,
    entries: Vec<P>,
}

impl<P: Clone> PolyMatrix<P> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> P) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &P {
        &self.entries[i * self.cols + j]
    }

    /// Selection by 0-based index lists; callers pass combinations produced
    /// by the minor enumerators.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        PolyMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }
}

impl PolyMatrix<UniPoly> {
    /// The pencil `m0 + s * d`; shapes must agree.
    pub fn pencil(m0: &MatrixQ, d: &MatrixQ) -> Result<Self> {
        if (m0.rows(), m0.cols()) != (d.rows(), d.cols()) {
            return Err(Error::DimensionMismatch(format!(
                "pencil of {}x{} and {}x{}",
                m0.rows(),
                m0.cols(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(PolyMatrix::from_fn(m0.rows(), m0.cols(), |i, j| {
            UniPoly::new(vec![m0.get(i, j).clone(), d.get(i, j).clone()])
        }))
    }

    pub fn eval(&self, s: &crate::rational::Rat) -> MatrixQ {
        MatrixQ::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(s))
    }

    /// Determinant by fraction-free Bareiss elimination over the polynomial
    /// ring; every division is exact by the Bareiss identity.
    pub fn det(&self) -> Result<UniPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut b = self.entries.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut prev = UniPoly::one();
        let mut negate = false;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !b[at(i, col)].is_zero()) else {
                return Ok(UniPoly::zero());
            };
            if p != col {
                for j in 0..n {
                    b.swap(at(p, j), at(col, j));
                }
                negate = !negate;
            }
            for i in col + 1..n {
                for j in col + 1..n {
                    let num = &(&b[at(i, j)] * &b[at(col, col)]) - &(&b[at(i, col)] * &b[at(col, j)]);
                    b[at(i, j)] = num.exact_div(&prev)?;
                }
                b[at(i, col)] = UniPoly::zero();
            }
            prev = b[at(col, col)].clone();
        }
        Ok(if negate { -&prev } else { prev })
    }
}

impl PolyMatrix<MultiPoly> {
    /// Symbolic matrix of an affine family `base + sum t_k basis_k`.
    pub fn from_affine(base: &MatrixQ, basis: &[MatrixQ]) -> Self {
        PolyMatrix::from_fn(base.rows(), base.cols(), |i, j| {
            let coeffs: Vec<_> = basis.iter().map(|d| d.get(i, j).clone()).collect();
            MultiPoly::affine(base.get(i, j).clone(), &coeffs)
        })
    }

    pub fn eval(&self, point: &[crate::rational::Rat]) -> MatrixQ {
        MatrixQ::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(point))
    }

    /// Determinant by cofactor expansion along rows, memoized on the set of
    /// surviving columns (the row is determined by how many columns are
    /// gone, so the mask is a complete key).
    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        assert!(n <= 64, "cofactor masks use 64-bit column sets");
        let arity = if n == 0 {
            0
        } else {
            self.entries[0].arity()
        };
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
        Ok(self.det_rec(full, arity, &mut memo))
    }

    fn det_rec(&self, mask: u64, arity: usize, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        let n = self.rows;
        let row = n - mask.count_ones() as usize;
        if row == n {
            return MultiPoly::one(arity);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(arity);
        let mut sign_pos = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let e = self.get(row, col);
            if !e.is_zero() {
                let term = e.mul(&self.det_rec(mask & !(1 << col), arity, memo));
                acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

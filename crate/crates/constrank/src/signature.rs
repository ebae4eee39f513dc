//! Exact inertia of symmetric rational matrices.
//!
//! Lagrange congruence diagonalization: repeatedly pick a nonzero diagonal
//! entry and clear its row and column with paired operations, repairing a
//! zero diagonal by adding a row/column that meets it in a nonzero entry.
//! The result counts positive and negative diagonal entries, which by
//! Sylvester's law of inertia is the signature of the form.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::rational::Rat;

/// `(n_plus, n_minus)` for a symmetric matrix; the rank is their sum.
pub fn symmetric_signature(a: &MatrixQ) -> Result<(usize, usize)> {
    let (_, d) = diagonalize_symmetric(a)?;
    let mut plus = 0usize;
    let mut minus = 0usize;
    for i in 0..d.rows() {
        if d.get(i, i).is_positive() {
            plus += 1;
        } else if !d.get(i, i).is_zero() {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

/// Congruence diagonalization with its transform: returns `(c, d)` with
/// `c` invertible, `d` diagonal and `c^T a c = d`. Columns of `c` whose
/// diagonal value is positive are explicit vectors on which the form is
/// positive, which is how positive directions get extracted downstream.
pub fn diagonalize_symmetric(a: &MatrixQ) -> Result<(MatrixQ, MatrixQ)> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows();
    let mut b = a.clone();
    let mut c = MatrixQ::identity(n);
    for i in 0..n {
        if b.get(i, i).is_zero() {
            // Prefer a later nonzero diagonal entry: swap it in.
            if let Some(j) = (i + 1..n).find(|&j| !b.get(j, j).is_zero()) {
                swap_sym(&mut b, i, j);
                col_swap(&mut c, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !b.get(i, j).is_zero()) {
                // Row i meets column j off the diagonal: col i += col j
                // (and the paired row op) makes b[i][i] = 2 b[i][j] != 0.
                let one = Rat::from_integer(1.into());
                add_sym(&mut b, i, j, &one);
                col_add(&mut c, i, j, &one);
            } else {
                // Row i is entirely zero in the trailing block.
                continue;
            }
        }
        let d = b.get(i, i).clone();
        for j in i + 1..n {
            if b.get(i, j).is_zero() {
                continue;
            }
            let f = -(b.get(i, j) / &d);
            add_sym(&mut b, j, i, &f);
            col_add(&mut c, j, i, &f);
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || b.get(i, j).is_zero())));
    debug_assert_eq!(&(&c.transpose() * a) * &c, b);
    Ok((c, b))
}

/// Simultaneous row+column swap, a congruence by a permutation.
fn swap_sym(b: &mut MatrixQ, x: usize, y: usize) {
    let n = b.rows();
    for i in 0..n {
        let (u, v) = (b.get(i, x).clone(), b.get(i, y).clone());
        b.set(i, x, v);
        b.set(i, y, u);
    }
    for j in 0..n {
        let (u, v) = (b.get(x, j).clone(), b.get(y, j).clone());
        b.set(x, j, v);
        b.set(y, j, u);
    }
}

/// `col(x) += f * col(y)` plus the paired row operation.
fn add_sym(b: &mut MatrixQ, x: usize, y: usize, f: &Rat) {
    let n = b.rows();
    for i in 0..n {
        let v = b.get(i, x) + &(b.get(i, y) * f);
        b.set(i, x, v);
    }
    for j in 0..n {
        let v = b.get(x, j) + &(b.get(y, j) * f);
        b.set(x, j, v);
    }
}

/// `col(x) += f * col(y)` alone, to accumulate the congruence transform.
fn col_add(c: &mut MatrixQ, x: usize, y: usize, f: &Rat) {
    for i in 0..c.rows() {
        let v = c.get(i, x) + &(c.get(i, y) * f);
        c.set(i, x, v);
    }
}

fn col_swap(c: &mut MatrixQ, x: usize, y: usize) {
    for i in 0..c.rows() {
        let (u, v) = (c.get(i, x).clone(), c.get(i, y).clone());
        c.set(i, x, v);
        c.set(i, y, u);
    }
}

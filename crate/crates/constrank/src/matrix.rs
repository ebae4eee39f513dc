//! Dense exact matrices over the rationals.
//!
//! Rank and determinant go through fraction-free Bareiss elimination with a
//! deterministic pivot rule: columns are scanned left to right, and within a
//! column the first nonzero entry from the top is the pivot. Row selection
//! tracks original indices so callers can recover a concrete nonsingular
//! pivot minor of a rank-r matrix.
//!
//! Public index-taking APIs on this type are 1-based to match the row and
//! column conventions used throughout the construction layer; internal
//! accessors `get`/`set` are 0-based.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Outcome of one Bareiss elimination pass.
#[derive(Clone, Debug)]
pub struct PivotProfile {
    pub rank: usize,
    /// Original (unpermuted) 0-based row index of each pivot, in selection order.
    pub pivot_rows: Vec<usize>,
    /// 0-based column index of each pivot, ascending.
    pub pivot_cols: Vec<usize>,
    /// Determinant when the matrix is square, else `None`.
    pub det: Option<Rat>,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid shape mismatch");
        MatrixQ {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixQ::new(rows, cols, entries)
    }

    /// Test and example helper: rows of machine integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixQ::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    /// Stacks vectors as matrix rows; empty input makes a 0 x `cols` matrix.
    pub fn from_rows(cols: usize, vecs: &[Vec<Rat>]) -> Self {
        assert!(vecs.iter().all(|v| v.len() == cols), "ragged rows");
        let entries = vecs.iter().flatten().cloned().collect();
        MatrixQ::new(vecs.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Row-major flattening; the coordinate vector used for independence
    /// checks on sets of matrices.
    pub fn vectorize(&self) -> Vec<Rat> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Self {
        MatrixQ::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl FnMut(&Rat) -> Rat) -> Self {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|x| x * c)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Submatrix by 1-based row and column index lists, in the given order.
    /// Errors on zero or out-of-range indices; duplicates are allowed.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        for &i in row_idx {
            if i == 0 || i > self.rows {
                return Err(Error::IndexOutOfRange(format!(
                    "row {i} of a {}x{} matrix (1-based)",
                    self.rows, self.cols
                )));
            }
        }
        for &j in col_idx {
            if j == 0 || j > self.cols {
                return Err(Error::IndexOutOfRange(format!(
                    "column {j} of a {}x{} matrix (1-based)",
                    self.rows, self.cols
                )));
            }
        }
        Ok(MatrixQ::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i] - 1, col_idx[j] - 1).clone()
        }))
    }

    /// Copies `block` into position with its top-left corner at `(i0, j0)`
    /// (0-based); panics if it does not fit.
    pub fn set_block(&mut self, i0: usize, j0: usize, block: &MatrixQ) {
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j).clone());
            }
        }
    }

    /// The `r` x `c` block with top-left corner at `(i0, j0)` (0-based).
    pub fn block(&self, i0: usize, j0: usize, r: usize, c: usize) -> Self {
        assert!(i0 + r <= self.rows && j0 + c <= self.cols);
        MatrixQ::from_fn(r, c, |i, j| self.get(i0 + i, j0 + j).clone())
    }

    /// Fraction-free Bareiss elimination. One pass yields rank, pivot
    /// positions of the original matrix, and the determinant when square.
    pub fn pivot_profile(&self) -> PivotProfile {
        let (r, c) = (self.rows, self.cols);
        let mut b = self.entries.clone();
        let mut perm: Vec<usize> = (0..r).collect();
        let mut prev = Rat::one();
        let mut sign = 1i8;
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut cur = 0usize;
        let at = |i: usize, j: usize| i * c + j;
        for col in 0..c {
            if cur == r {
                break;
            }
            let Some(p) = (cur..r).find(|&i| !b[at(i, col)].is_zero()) else {
                continue;
            };
            if p != cur {
                for j in 0..c {
                    b.swap(at(p, j), at(cur, j));
                }
                perm.swap(p, cur);
                sign = -sign;
            }
            for i in cur + 1..r {
                for j in col + 1..c {
                    let num = &b[at(i, j)] * &b[at(cur, col)] - &b[at(i, col)] * &b[at(cur, j)];
                    b[at(i, j)] = num / &prev;
                }
                b[at(i, col)] = Rat::zero();
            }
            prev = b[at(cur, col)].clone();
            pivot_rows.push(perm[cur]);
            pivot_cols.push(col);
            cur += 1;
        }
        let rank = pivot_rows.len();
        let det = if self.is_square() {
            Some(if rank < self.rows {
                Rat::zero()
            } else if sign > 0 {
                prev
            } else {
                -prev
            })
        } else {
            None
        };
        PivotProfile {
            rank,
            pivot_rows,
            pivot_cols,
            det,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_profile().rank
    }

    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.pivot_profile().det.expect("square"))
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatrixQ::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Err(Error::Singular);
            };
            if p != col {
                for j in 0..n {
                    let (x, y) = (a.get(p, j).clone(), a.get(col, j).clone());
                    a.set(p, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(p, j).clone(), inv.get(col, j).clone());
                    inv.set(p, j, y);
                    inv.set(col, j, x);
                }
            }
            let d = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &d);
                inv.set(col, j, inv.get(col, j) / &d);
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in 0..n {
                    let va = a.get(i, j) - &(a.get(col, j) * &f);
                    a.set(i, j, va);
                    let vi = inv.get(i, j) - &(inv.get(col, j) * &f);
                    inv.set(i, j, vi);
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form together with its 0-based pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut cur = 0usize;
        for col in 0..c {
            if cur == r {
                break;
            }
            let Some(p) = (cur..r).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            if p != cur {
                for j in 0..c {
                    let (x, y) = (a.get(p, j).clone(), a.get(cur, j).clone());
                    a.set(p, j, y);
                    a.set(cur, j, x);
                }
            }
            let d = a.get(cur, col).clone();
            for j in col..c {
                a.set(cur, j, a.get(cur, j) / &d);
            }
            for i in 0..r {
                if i == cur || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in col..c {
                    let v = a.get(i, j) - &(a.get(cur, j) * &f);
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            cur += 1;
        }
        (a, pivots)
    }

    /// Basis of the right nullspace `{ v : A v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (rr, pivots) = self.rref();
        let c = self.cols;
        let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fj in &free {
            let mut v = vec![Rat::zero(); c];
            v[fj] = Rat::one();
            for (row, &pj) in pivots.iter().enumerate() {
                v[pj] = -rr.get(row, fj).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl Add for &MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &MatrixQ {
    type Output = MatrixQ;
    fn neg(self) -> MatrixQ {
        self.map(|x| -x)
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        MatrixQ::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * rhs.get(k, j);
                }
            }
            acc
        })
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixQ({}x{})\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{random_rat, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: cofactor expansion along the first row.
    fn det_cofactor(m: &MatrixQ) -> Rat {
        let n = m.rows();
        if n == 0 {
            return Rat::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rat::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = MatrixQ::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j) * &det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// Independent oracle: rank by plain Gaussian echelon form.
    fn rank_echelon(m: &MatrixQ) -> usize {
        let (r, c) = (m.rows(), m.cols());
        let mut a: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..c).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] / &a[rank][col];
                #[allow(clippy::needless_range_loop)] // rows i and rank alias `a`
                for j in col..c {
                    let v = &a[i][j] - &(&a[rank][j] * &f);
                    a[i][j] = v;
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> MatrixQ {
        MatrixQ::from_fn(r, c, |_, _| random_rat(rng))
    }

    #[test]
    fn det_3x3_frozen() {
        // Value frozen from the cofactor oracle: 1.
        let m = MatrixQ::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 1], &[1, 0, 0]]);
        assert_eq!(det_cofactor(&m), rat(1, 1));
        assert_eq!(m.det().unwrap(), rat(1, 1));
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..60 {
            let n = rng.gen_range(0..=5);
            let m = random_matrix(&mut rng, n, n);
            assert_eq!(m.det().unwrap(), det_cofactor(&m));
        }
        assert!(MatrixQ::zeros(2, 3).det().is_err());
    }

    #[test]
    fn rank_matches_echelon_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let r = rng.gen_range(1..=8);
            let c = rng.gen_range(1..=8);
            // Mix in singular structure: random product of thin factors.
            let k = rng.gen_range(0..=r.min(c));
            let m = if rng.gen_bool(0.5) {
                random_matrix(&mut rng, r, c)
            } else {
                &random_matrix(&mut rng, r, k) * &random_matrix(&mut rng, k, c)
            };
            assert_eq!(m.rank(), rank_echelon(&m));
        }
    }

    #[test]
    fn pivot_profile_selects_nonsingular_minor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let k = rng.gen_range(0..=r.min(c));
            let m = &random_matrix(&mut rng, r, k) * &random_matrix(&mut rng, k, c);
            let p = m.pivot_profile();
            assert_eq!(p.rank, rank_echelon(&m));
            if p.rank > 0 {
                let rows: Vec<usize> = p.pivot_rows.iter().map(|i| i + 1).collect();
                let cols: Vec<usize> = p.pivot_cols.iter().map(|j| j + 1).collect();
                let minor = m.submatrix(&rows, &cols).unwrap();
                assert!(!minor.det().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn submatrix_is_one_based() {
        let m = MatrixQ::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let s = m.submatrix(&[1, 3], &[2]).unwrap();
        assert_eq!(s, MatrixQ::from_i64_rows(&[&[2], &[8]]));
        assert!(m.submatrix(&[0], &[1]).is_err());
        assert!(m.submatrix(&[1], &[4]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(1..=6);
            let m = random_matrix(&mut rng, n, n);
            if m.det().unwrap().is_zero() {
                continue;
            }
            let inv = m.inverse().unwrap();
            assert_eq!(&m * &inv, MatrixQ::identity(n));
            assert_eq!(&inv * &m, MatrixQ::identity(n));
            done += 1;
        }
        let sing = MatrixQ::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn nullspace_spans_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let m = random_matrix(&mut rng, r, c);
            let ns = m.nullspace();
            assert_eq!(ns.len(), c - m.rank());
            for v in &ns {
                let vm = MatrixQ::new(c, 1, v.clone());
                let prod = &m * &vm;
                assert!(prod.entries().iter().all(Rat::is_zero));
            }
            // Independence of the basis.
            let stacked = MatrixQ::from_rows(c, &ns);
            assert_eq!(stacked.rank(), ns.len());
        }
    }

    #[test]
    fn symmetry_predicates() {
        let sym = MatrixQ::from_i64_rows(&[&[1, 2], &[2, 3]]);
        let skew = MatrixQ::from_i64_rows(&[&[0, 5], &[-5, 0]]);
        assert!(sym.is_symmetric() && !sym.is_antisymmetric());
        assert!(skew.is_antisymmetric() && !skew.is_symmetric());
        assert!(!MatrixQ::from_i64_rows(&[&[1, 0], &[0, 1]]).is_antisymmetric());
        assert!(!MatrixQ::zeros(2, 3).is_symmetric());
    }

    #[test]
    fn display_alignment() {
        let m = MatrixQ::from_fn(2, 2, |i, j| rat((i + 10 * j) as i64, 3));
        let text = m.to_string();
        assert!(text.contains("10/3"));
        assert_eq!(text.lines().count(), 2);
    }
}

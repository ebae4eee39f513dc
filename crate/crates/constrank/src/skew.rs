//! Antisymmetric matrices: Pfaffians and the congruence normal form.
//!
//! Sign convention: the Pfaffian is defined by recursive expansion along the
//! first row, `Pf(A) = sum_k (-1)^k a_{1k} Pf(A_{1k})` over `k = 2..=n` with
//! alternating signs starting positive at `k = 2`. Under this convention the
//! standard block matrix `Jbar` (diagonal of `[[0,1],[-1,0]]` blocks) has
//! Pfaffian `+1`, and `Pf(A)^2 = det(A)` for every antisymmetric `A`.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::rational::Rat;

/// An exactly antisymmetric matrix; the wrapper certifies `A^T = -A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrixQ(MatrixQ);

impl SkewMatrixQ {
    pub fn new(m: MatrixQ) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::NotSkew);
        }
        Ok(SkewMatrixQ(m))
    }

    /// Builds from the strict upper triangle, mirroring with a sign flip.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
        SkewMatrixQ(m)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &MatrixQ {
        &self.0
    }

    pub fn into_matrix(self) -> MatrixQ {
        self.0
    }

    /// Pfaffian by memoized expansion along the first surviving row.
    /// Zero for odd sizes; `Pf(empty) = 1`.
    pub fn pfaffian(&self) -> Rat {
        let n = self.n();
        assert!(n <= 64, "pfaffian expansion uses a 64-bit index mask");
        if n % 2 == 1 {
            return Rat::zero();
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo: HashMap<u64, Rat> = HashMap::new();
        self.pf_rec(full, &mut memo)
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, Rat>) -> Rat {
        if mask == 0 {
            return Rat::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let alive: Vec<usize> = (0..self.n()).filter(|&i| mask & (1 << i) != 0).collect();
        let first = alive[0];
        let mut acc = Rat::zero();
        let mut sign_pos = true;
        for &j in &alive[1..] {
            let a = self.0.get(first, j);
            if !a.is_zero() {
                let sub = mask & !(1 << first) & !(1 << j);
                let term = a * &self.pf_rec(sub, memo);
                if sign_pos {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Congruence normal form: returns `(Q, k)` with `Q` invertible and
    /// `Q^T A Q = Jbar_{2k} (+) 0`, so `rank A = 2k` and every block
    /// coefficient is normalized to one. The algorithm is a block version of
    /// Lagrange reduction: pick the first nonzero entry in scan order (rows
    /// top to bottom, columns left to right within the untouched trailing
    /// block), move it to the current 2x2 position by simultaneous row and
    /// column swaps, rescale it to 1, then clear the two fresh rows and
    /// columns with paired elementary operations.
    pub fn skew_normal_form(&self) -> (MatrixQ, usize) {
        let n = self.n();
        let mut b = self.0.clone();
        let mut q = MatrixQ::identity(n);
        let mut pos = 0usize;

        // Paired column+row op keeps b congruent; q accumulates column ops.
        let swap = |b: &mut MatrixQ, q: &mut MatrixQ, x: usize, y: usize| {
            if x == y {
                return;
            }
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
            for i in 0..n {
                let (u, v) = (q.get(i, x).clone(), q.get(i, y).clone());
                q.set(i, x, v);
                q.set(i, y, u);
            }
        };

        while pos + 1 < n {
            // First nonzero entry of the untouched trailing block.
            let mut found = None;
            'scan: for i in pos..n {
                for j in i + 1..n {
                    if !b.get(i, j).is_zero() {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            // j > i >= pos, so neither swap can displace the found entry.
            let Some((i, j)) = found else { break };
            swap(&mut b, &mut q, i, pos);
            swap(&mut b, &mut q, j, pos + 1);

            // Rescale column/row pos+1 so the block entry is exactly 1.
            let c = b.get(pos, pos + 1).clone();
            if !c.is_one() {
                let inv = Rat::one() / &c;
                for i in 0..n {
                    let v = b.get(i, pos + 1) * &inv;
                    b.set(i, pos + 1, v);
                }
                for jj in 0..n {
                    let v = b.get(pos + 1, jj) * &inv;
                    b.set(pos + 1, jj, v);
                }
                for i in 0..n {
                    let v = q.get(i, pos + 1) * &inv;
                    q.set(i, pos + 1, v);
                }
            }

            // Clear rows/columns pos and pos+1 outside the block.
            for col in pos + 2..n {
                let alpha = b.get(pos, col).clone();
                if !alpha.is_zero() {
                    add_multiple(&mut b, &mut q, n, col, pos + 1, &-alpha);
                }
                let beta = b.get(pos + 1, col).clone();
                if !beta.is_zero() {
                    add_multiple(&mut b, &mut q, n, col, pos, &beta);
                }
            }
            pos += 2;
        }
        debug_assert!({
            let jk = crate::constructions::jtilde_matrix(n, pos / 2);
            &(&q.transpose() * &self.0) * &q == jk
        });
        (q, pos / 2)
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }
}

/// `col(target) += f * col(source)` with the paired row operation on `b`,
/// and the same column operation accumulated into `q`.
fn add_multiple(b: &mut MatrixQ, q: &mut MatrixQ, n: usize, target: usize, source: usize, f: &Rat) {
    for i in 0..n {
        let v = b.get(i, target) + &(b.get(i, source) * f);
        b.set(i, target, v);
    }
    for j in 0..n {
        let v = b.get(target, j) + &(b.get(source, j) * f);
        b.set(target, j, v);
    }
    for i in 0..n {
        let v = q.get(i, target) + &(q.get(i, source) * f);
        q.set(i, target, v);
    }
}

//! Builders for the structured families the toolkit studies: the standard
//! skew form, block grids and their skew/symmetric assemblies, the witness
//! subspaces of maximal dimension for each ambient regime, the comparison
//! subspaces entering the dimension bound, and the closed-form dimension
//! formulas those constructions realize.
//!
//! Conventions. `J` is the 2x2 block `[[0,1],[-1,0]]`; `jbar(2k)` stacks k
//! copies of it on the diagonal; `jtilde_matrix(n, k)` pads that with zeros
//! to n x n. A "pinco" is a 2x2 symmetric trace-zero block `[[a,b],[b,-a]]`;
//! an "antipinco" is `[[a,b],[-b,a]]`. All public indices are 1-based to
//! match the written conventions for rows, columns and block positions.

use num::{One, Zero};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::rational::{int, rat, random_rat, Rat};
use crate::skew::SkewMatrixQ;
use crate::subspace::{AffineMatrixSubspace, Ambient};

/// The 2x2 standard symplectic block.
pub fn j2() -> MatrixQ {
    MatrixQ::from_i64_rows(&[&[0, 1], &[-1, 0]])
}

/// Block diagonal of `size/2` copies of `j2`; `size` must be even.
pub fn jbar(size: usize) -> Result<MatrixQ> {
    if !size.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "jbar needs an even size, got {size}"
        )));
    }
    let mut m = MatrixQ::zeros(size, size);
    for b in 0..size / 2 {
        m.set_block(2 * b, 2 * b, &j2());
    }
    Ok(m)
}

/// `jbar(2k)` padded with zeros to n x n; the canonical rank-2k point.
pub fn jtilde_matrix(n: usize, k: usize) -> MatrixQ {
    assert!(2 * k <= n, "rank 2k = {} exceeds size {n}", 2 * k);
    let mut m = MatrixQ::zeros(n, n);
    m.set_block(0, 0, &jbar(2 * k).expect("even size"));
    m
}

pub fn jtilde(n: usize, k: usize) -> SkewMatrixQ {
    SkewMatrixQ::new(jtilde_matrix(n, k)).expect("skew by construction")
}

/// Unit matrix `E_ij` (1-based).
pub fn e_matrix(n: usize, i: usize, j: usize) -> MatrixQ {
    assert!(i >= 1 && i <= n && j >= 1 && j <= n, "1-based indices");
    let mut m = MatrixQ::zeros(n, n);
    m.set(i - 1, j - 1, int(1));
    m
}

/// `E_ij - E_ji` (1-based, i != j), the elementary skew direction.
pub fn e_skew(n: usize, i: usize, j: usize) -> MatrixQ {
    assert!(i != j, "diagonal entries of a skew matrix vanish");
    &e_matrix(n, i, j) - &e_matrix(n, j, i)
}

/// Block diagonal `diag(l_1 J, ..., l_r J)`, a 2r x 2r skew matrix.
pub fn t_matrix(ls: &[Rat]) -> MatrixQ {
    let r = ls.len();
    let mut m = MatrixQ::zeros(2 * r, 2 * r);
    for (b, l) in ls.iter().enumerate() {
        m.set_block(2 * b, 2 * b, &j2().scale(l));
    }
    m
}

pub fn is_pinco(m: &MatrixQ) -> bool {
    (m.rows(), m.cols()) == (2, 2)
        && m.get(1, 0) == m.get(0, 1)
        && *m.get(1, 1) == -m.get(0, 0).clone()
}

pub fn is_antipinco(m: &MatrixQ) -> bool {
    (m.rows(), m.cols()) == (2, 2)
        && *m.get(1, 0) == -m.get(0, 1).clone()
        && m.get(1, 1) == m.get(0, 0)
}

/// `J * P` for a pinco `P`; the result is symmetric with determinant
/// `-(a^2 + b^2)`, the mechanism behind forced real rank drops.
pub fn pinco_tilde(p: &MatrixQ) -> Result<MatrixQ> {
    if !is_pinco(p) {
        return Err(Error::InvalidParams(
            "pinco_tilde needs a 2x2 block [[a,b],[b,-a]]".to_string(),
        ));
    }
    Ok(&j2() * p)
}

/// One 2x2 block for every pair `1 <= i < j <= m`, stored in
/// lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    m: usize,
    blocks: Vec<MatrixQ>,
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    (i - 1) * m - i * (i - 1) / 2 + (j - i - 1)
}

impl BlockGrid {
    /// Blocks must arrive in lexicographic pair order, m(m-1)/2 of them.
    pub fn new(m: usize, blocks: Vec<MatrixQ>) -> Result<Self> {
        let expected = m * (m - 1) / 2;
        if blocks.len() != expected {
            return Err(Error::IncompleteGrid {
                m,
                expected,
                got: blocks.len(),
            });
        }
        for b in &blocks {
            if (b.rows(), b.cols()) != (2, 2) {
                return Err(Error::DimensionMismatch(format!(
                    "grid blocks are 2x2, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(BlockGrid { m, blocks })
    }

    pub fn zero(m: usize) -> Self {
        BlockGrid {
            m,
            blocks: vec![MatrixQ::zeros(2, 2); m * (m - 1) / 2],
        }
    }

    pub fn random(m: usize, rng: &mut ChaCha8Rng) -> Self {
        let blocks = (0..m * (m - 1) / 2)
            .map(|_| MatrixQ::from_fn(2, 2, |_, _| random_rat(rng)))
            .collect();
        BlockGrid { m, blocks }
    }

    pub fn random_antipinco(m: usize, rng: &mut ChaCha8Rng) -> Self {
        let blocks = (0..m * (m - 1) / 2)
            .map(|_| {
                let a = random_rat(rng);
                let b = random_rat(rng);
                antipinco(&a, &b)
            })
            .collect();
        BlockGrid { m, blocks }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block at pair position (i, j), 1-based, i < j.
    pub fn get(&self, i: usize, j: usize) -> Result<&MatrixQ> {
        if !(1 <= i && i < j && j <= self.m) {
            return Err(Error::IndexOutOfRange(format!(
                "pair ({i}, {j}) of a {0}-block grid (need 1 <= i < j <= {0})",
                self.m
            )));
        }
        Ok(&self.blocks[pair_index(self.m, i, j)])
    }

    pub fn map(&self, f: impl Fn(&MatrixQ) -> MatrixQ) -> Self {
        BlockGrid {
            m: self.m,
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.entries().iter().all(Zero::is_zero))
    }
}

pub fn antipinco(a: &Rat, b: &Rat) -> MatrixQ {
    MatrixQ::new(2, 2, vec![a.clone(), b.clone(), -b.clone(), a.clone()])
}

pub fn pinco(a: &Rat, b: &Rat) -> MatrixQ {
    MatrixQ::new(2, 2, vec![a.clone(), b.clone(), b.clone(), -a.clone()])
}

/// Skew 2m x 2m assembly: block (i, j) above the diagonal is `A_ij`, below
/// it `-A_ij^T`, zero on the diagonal.
pub fn r_matrix(g: &BlockGrid) -> SkewMatrixQ {
    let n = 2 * g.m;
    let mut m = MatrixQ::zeros(n, n);
    for i in 1..=g.m {
        for j in (i + 1)..=g.m {
            let a = g.get(i, j).expect("in range");
            m.set_block(2 * (i - 1), 2 * (j - 1), a);
            m.set_block(2 * (j - 1), 2 * (i - 1), &a.transpose().scale(&int(-1)));
        }
    }
    SkewMatrixQ::new(m).expect("skew by construction")
}

/// Symmetric sibling of `r_matrix`: below the diagonal `+A_ij^T`.
pub fn x_matrix(g: &BlockGrid) -> MatrixQ {
    let n = 2 * g.m;
    let mut m = MatrixQ::zeros(n, n);
    for i in 1..=g.m {
        for j in (i + 1)..=g.m {
            let a = g.get(i, j).expect("in range");
            m.set_block(2 * (i - 1), 2 * (j - 1), a);
            m.set_block(2 * (j - 1), 2 * (i - 1), &a.transpose());
        }
    }
    debug_assert!(m.is_symmetric());
    m
}

/// The maximal dimension of an affine subspace of n x n antisymmetric
/// matrices of constant rank `rank` (which must be even and positive).
pub fn max_dim_antisym(n: usize, rank: usize) -> Result<usize> {
    if !rank.is_multiple_of(2) {
        return Err(Error::OddRank(rank));
    }
    if rank == 0 {
        return Err(Error::InvalidParams(
            "rank 0 families are a single point; no bound to report".to_string(),
        ));
    }
    if rank > n {
        return Err(Error::RankTooLarge {
            rank,
            rows: n,
            cols: n,
        });
    }
    let r = rank / 2;
    Ok(if n >= 2 * r + 2 {
        (n - r - 1) * r
    } else if n == 2 * r + 1 {
        r * (r + 1)
    } else {
        r * (r - 1)
    })
}

/// Companion formula for symmetric ambients: `floor(r/2) * (n - floor(r/2))`.
pub fn sym_upper_bound(n: usize, rank: usize) -> Result<usize> {
    if rank == 0 || rank > n {
        return Err(Error::InvalidParams(format!(
            "symmetric rank must satisfy 1 <= rank <= n, got rank {rank}, n {n}"
        )));
    }
    let h = rank / 2;
    Ok(h * (n - h))
}

/// Companion formula for full m x n ambients with `rank <= m <= n`:
/// `rank * n - rank (rank + 1) / 2`.
pub fn rect_constant_rank_dim(m: usize, n: usize, rank: usize) -> Result<usize> {
    if rank == 0 || rank > m || m > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= rank <= m <= n, got rank {rank}, m {m}, n {n}"
        )));
    }
    Ok(rank * n - rank * (rank + 1) / 2)
}

/// Ambient shape relative to the target rank 2r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// n >= 2r + 2: bound (n - r - 1) r.
    Wide,
    /// n = 2r + 1: bound r (r + 1).
    Odd,
    /// n = 2r: bound r (r - 1).
    Tight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    pub n: usize,
    pub r: usize,
}

impl WitnessParams {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || n < 2 * r {
            return Err(Error::InvalidParams(format!(
                "need 1 <= r and 2r <= n, got r {r}, n {n}"
            )));
        }
        Ok(WitnessParams { n, r })
    }

    pub fn regime(&self) -> Regime {
        if self.n >= 2 * self.r + 2 {
            Regime::Wide
        } else if self.n == 2 * self.r + 1 {
            Regime::Odd
        } else {
            Regime::Tight
        }
    }

    pub fn rank(&self) -> usize {
        2 * self.r
    }

    pub fn expected_dim(&self) -> usize {
        max_dim_antisym(self.n, 2 * self.r).expect("params validated")
    }
}

/// The extremal constant-rank-2r affine subspace of n x n antisymmetric
/// matrices, of dimension `max_dim_antisym(n, 2r)`.
///
/// Base point `jtilde(n, r)`. Writing elements in blocks
/// `[[jbar + R(A), C], [-C^T, 0]]`, the linear part varies:
///
/// * wide: the odd-row entries of C (even rows stay zero) and, per pair
///   i < j, the first row of `A_ij` (second rows stay zero);
/// * odd: all 2r entries of the single C column, plus the same A part;
/// * tight: the A part alone.
///
/// Basis order: C entries column-major (columns ascending, rows ascending
/// within a column), then A blocks in lexicographic pair order with the
/// two first-row entries left to right.
pub fn witness_subspace(p: &WitnessParams) -> Result<AffineMatrixSubspace> {
    let (n, r) = (p.n, p.r);
    let mut basis: Vec<MatrixQ> = Vec::new();
    match p.regime() {
        Regime::Wide => {
            for j in 1..=(n - 2 * r) {
                for i in 1..=r {
                    basis.push(e_skew(n, 2 * i - 1, 2 * r + j));
                }
            }
        }
        Regime::Odd => {
            for i in 1..=(2 * r) {
                basis.push(e_skew(n, i, 2 * r + 1));
            }
        }
        Regime::Tight => {}
    }
    for i in 1..=r {
        for j in (i + 1)..=r {
            basis.push(e_skew(n, 2 * i - 1, 2 * j - 1));
            basis.push(e_skew(n, 2 * i - 1, 2 * j));
        }
    }
    let s = AffineMatrixSubspace::new(Ambient::Antisymmetric, jtilde_matrix(n, r), basis)?;
    debug_assert_eq!(s.dim(), p.expected_dim());
    Ok(s)
}

fn embed_top_left(m: &MatrixQ, n: usize) -> MatrixQ {
    let mut out = MatrixQ::zeros(n, n);
    out.set_block(0, 0, m);
    out
}

/// The linear subspace `{ T(l) + R(antipinco grid) }` of 2r x 2r skew
/// matrices, dimension r^2. Every nonzero element `u` forces a real rank
/// drop of `jbar + s u`, which is what makes it useful as a comparison
/// space in the dimension bound.
pub fn build_u(r: usize) -> Result<AffineMatrixSubspace> {
    build_u_embedded(2 * r, r)
}

/// `build_u` with every direction padded by zeros into n x n.
pub fn build_u_embedded(n: usize, r: usize) -> Result<AffineMatrixSubspace> {
    if r == 0 || n < 2 * r {
        return Err(Error::InvalidParams(format!(
            "need 1 <= r and 2r <= n, got r {r}, n {n}"
        )));
    }
    let mut basis = Vec::new();
    for i in 0..r {
        let mut ls = vec![Rat::zero(); r];
        ls[i] = Rat::one();
        basis.push(embed_top_left(&t_matrix(&ls), n));
    }
    for i in 1..=r {
        for j in (i + 1)..=r {
            for block in [antipinco(&int(1), &int(0)), antipinco(&int(0), &int(1))] {
                let mut g = BlockGrid::zero(r);
                g.blocks[pair_index(r, i, j)] = block;
                basis.push(embed_top_left(r_matrix(&g).as_matrix(), n));
            }
        }
    }
    AffineMatrixSubspace::new(Ambient::Antisymmetric, MatrixQ::zeros(n, n), basis)
}

/// The 2r-dimensional subspace of two-column C parts (columns j1, j2 of
/// the off-block, 1-based among the n - 2r trailing columns) on which the
/// pairing form `quadratic_form_defpos` is positive definite. Returned as
/// full n x n skew directions.
pub fn build_z(n: usize, r: usize, j1: usize, j2: usize) -> Result<Vec<SkewMatrixQ>> {
    let w = n.saturating_sub(2 * r);
    if r == 0 || n < 2 * r + 2 {
        return Err(Error::RegimeMismatch { n, r });
    }
    if j1 == j2 || j1 == 0 || j2 == 0 || j1 > w || j2 > w {
        return Err(Error::InvalidParams(format!(
            "need distinct 1-based column indices within 1..={w}, got {j1}, {j2}"
        )));
    }
    let mut out = Vec::with_capacity(2 * r);
    for i in 1..=r {
        // In coordinates (c_{2i-1,j1}, c_{2i,j1}, c_{2i-1,j2}, c_{2i,j2})
        // the two directions are (0,1,1,0) and (1,0,0,-1); the pairing form
        // restricted to their span is a^2 + b^2.
        let v1 = &e_skew(n, 2 * i, 2 * r + j1) + &e_skew(n, 2 * i - 1, 2 * r + j2);
        let v2 = &e_skew(n, 2 * i - 1, 2 * r + j1) - &e_skew(n, 2 * i, 2 * r + j2);
        out.push(SkewMatrixQ::new(v1).expect("skew by construction"));
        out.push(SkewMatrixQ::new(v2).expect("skew by construction"));
    }
    Ok(out)
}

/// The pairing form `sum_i c_{2i-1,j2} c_{2i,j1} - c_{2i-1,j1} c_{2i,j2}`
/// on a 2r x w matrix of C entries (j's 1-based among the w columns).
pub fn quadratic_form_defpos(c: &MatrixQ, j1: usize, j2: usize) -> Result<Rat> {
    if !c.rows().is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "C part needs an even number of rows, got {}",
            c.rows()
        )));
    }
    let w = c.cols();
    if j1 == j2 || j1 == 0 || j2 == 0 || j1 > w || j2 > w {
        return Err(Error::InvalidParams(format!(
            "need distinct 1-based column indices within 1..={w}, got {j1}, {j2}"
        )));
    }
    let r = c.rows() / 2;
    let mut q = Rat::zero();
    for i in 1..=r {
        q += c.get(2 * i - 2, j2 - 1) * c.get(2 * i - 1, j1 - 1)
            - c.get(2 * i - 2, j1 - 1) * c.get(2 * i - 1, j2 - 1);
    }
    Ok(q)
}

/// Gram matrix of the pairing form in the coordinates
/// (c_{1,j1}, ..., c_{2r,j1}, c_{1,j2}, ..., c_{2r,j2}); its signature is
/// (2r, 2r), so no subspace of dimension above 2r avoids positive values.
pub fn defpos_gram(r: usize) -> MatrixQ {
    let mut g = MatrixQ::zeros(4 * r, 4 * r);
    let half = rat(1, 2);
    for i in 1..=r {
        g.set(2 * i - 1, 2 * r + 2 * i - 2, half.clone());
        g.set(2 * r + 2 * i - 2, 2 * i - 1, half.clone());
        g.set(2 * i - 2, 2 * r + 2 * i - 1, -half.clone());
        g.set(2 * r + 2 * i - 1, 2 * i - 2, -half.clone());
    }
    g
}

/// Both sides of the contraction identity used in the dimension bound:
/// for `u = T(l) + R(A)` with antipinco blocks,
/// `-jbar (jbar + s u) = I + s a` where `a = diag(l_1, l_1, ..., l_r, l_r)
/// + X(-J A_ij)` is symmetric. A nonzero symmetric `a` has a real nonzero
/// eigenvalue, so `det(jbar + s u)` has a real root.
#[derive(Clone, Debug)]
pub struct SsIdentity {
    pub lhs: MatrixQ,
    pub rhs: MatrixQ,
    pub a: MatrixQ,
}

impl SsIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.a.is_symmetric()
    }
}

pub fn identity_ss_check(ls: &[Rat], grid: &BlockGrid, s: &Rat) -> Result<SsIdentity> {
    let r = ls.len();
    if grid.m() != r {
        return Err(Error::DimensionMismatch(format!(
            "grid over {} indices, l over {r}",
            grid.m()
        )));
    }
    for i in 1..=r {
        for j in (i + 1)..=r {
            if !is_antipinco(grid.get(i, j)?) {
                return Err(Error::NotAntipinco);
            }
        }
    }
    let jb = jbar(2 * r)?;
    let u = &t_matrix(ls) + r_matrix(grid).as_matrix();
    let lhs = (&jb * &(&jb + &u.scale(s))).scale(&int(-1));
    let mut a = MatrixQ::zeros(2 * r, 2 * r);
    for (i, l) in ls.iter().enumerate() {
        a.set(2 * i, 2 * i, l.clone());
        a.set(2 * i + 1, 2 * i + 1, l.clone());
    }
    let minus_j = j2().scale(&int(-1));
    a = &a + &x_matrix(&grid.map(|b| &minus_j * b));
    let rhs = &MatrixQ::identity(2 * r) + &a.scale(s);
    Ok(SsIdentity { lhs, rhs, a })
}

/// The three dimension counts that pin down the wide-regime bound:
/// `bound = dim_p - dim_u - dim_z = (n - r - 1) r` for n >= 2r + 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundLedger {
    pub n: usize,
    pub r: usize,
    /// Skew matrices with vanishing trailing (n-2r) x (n-2r) block.
    pub dim_p: usize,
    /// The forced-drop comparison space `build_u`.
    pub dim_u: usize,
    /// The positive-pairing space `build_z`.
    pub dim_z: usize,
    pub bound: usize,
}

pub fn bound_ledger(n: usize, r: usize) -> Result<BoundLedger> {
    if r == 0 || n < 2 * r + 2 {
        return Err(Error::RegimeMismatch { n, r });
    }
    let dim_p = r * (2 * r - 1) + 2 * r * (n - 2 * r);
    let dim_u = r * r;
    let dim_z = r * (n - 2 * r);
    let bound = dim_p - dim_u - dim_z;
    debug_assert_eq!(bound, (n - r - 1) * r);
    Ok(BoundLedger {
        n,
        r,
        dim_p,
        dim_u,
        dim_z,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatrix::PolyMatrix;
    use crate::signature::symmetric_signature;
    use crate::sturm::sturm_real_roots;
    use rand::SeedableRng;

    #[test]
    fn jbar_shapes() {
        assert_eq!(jbar(2).unwrap(), j2());
        assert!(jbar(3).is_err());
        let j6 = jbar(6).unwrap();
        assert!(j6.is_antisymmetric());
        assert_eq!(j6.det().unwrap(), int(1));
        assert_eq!(jtilde_matrix(7, 2).rank(), 4);
    }

    #[test]
    fn pinco_predicates() {
        assert!(is_pinco(&pinco(&int(3), &rat(1, 2))));
        assert!(!is_pinco(&antipinco(&int(3), &rat(1, 2))));
        assert!(is_antipinco(&antipinco(&int(-1), &int(4))));
        assert!(is_antipinco(&MatrixQ::zeros(2, 2)));
        let pt = pinco_tilde(&pinco(&int(3), &int(2))).unwrap();
        assert!(pt.is_symmetric());
        assert_eq!(pt, MatrixQ::from_i64_rows(&[&[2, -3], &[-3, -2]]));
        assert_eq!(pt.det().unwrap(), int(-13));
        assert!(pinco_tilde(&j2()).is_err());
    }

    #[test]
    fn grid_indexing_and_validation() {
        let blocks = vec![
            MatrixQ::from_i64_rows(&[&[1, 2], &[3, 4]]),
            MatrixQ::from_i64_rows(&[&[5, 6], &[7, 8]]),
            MatrixQ::from_i64_rows(&[&[9, 10], &[11, 12]]),
        ];
        let g = BlockGrid::new(3, blocks.clone()).unwrap();
        assert_eq!(g.get(1, 2).unwrap(), &blocks[0]);
        assert_eq!(g.get(1, 3).unwrap(), &blocks[1]);
        assert_eq!(g.get(2, 3).unwrap(), &blocks[2]);
        assert!(g.get(2, 2).is_err());
        assert!(g.get(2, 1).is_err());
        assert!(g.get(0, 1).is_err());
        assert!(matches!(
            BlockGrid::new(3, vec![]),
            Err(Error::IncompleteGrid {
                m: 3,
                expected: 3,
                got: 0
            })
        ));
        assert!(BlockGrid::new(2, vec![MatrixQ::zeros(3, 3)]).is_err());
    }

    #[test]
    fn r_and_x_assemblies() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = BlockGrid::random(3, &mut rng);
        let rm = r_matrix(&g);
        assert!(rm.as_matrix().is_antisymmetric());
        let xm = x_matrix(&g);
        assert!(xm.is_symmetric());
        // Above-diagonal blocks agree with the grid in both assemblies.
        let a12 = g.get(1, 2).unwrap();
        assert_eq!(&rm.as_matrix().block(0, 2, 2, 2), a12);
        assert_eq!(&xm.block(0, 2, 2, 2), a12);
        assert_eq!(
            xm.block(2, 0, 2, 2),
            a12.transpose(),
            "lower block of X is the plain transpose"
        );
    }

    #[test]
    fn dimension_formula_values() {
        // Wide, odd and tight regimes on small parameters.
        assert_eq!(max_dim_antisym(6, 2).unwrap(), 4);
        assert_eq!(max_dim_antisym(6, 4).unwrap(), 6);
        assert_eq!(max_dim_antisym(5, 4).unwrap(), 6);
        assert_eq!(max_dim_antisym(4, 4).unwrap(), 2);
        assert_eq!(max_dim_antisym(10, 4).unwrap(), 14);
        assert!(matches!(max_dim_antisym(6, 3), Err(Error::OddRank(3))));
        assert!(matches!(
            max_dim_antisym(4, 6),
            Err(Error::RankTooLarge { .. })
        ));
        assert!(max_dim_antisym(4, 0).is_err());
        // Companion formulas.
        assert_eq!(sym_upper_bound(5, 3).unwrap(), 4);
        assert_eq!(sym_upper_bound(6, 4).unwrap(), 8);
        assert_eq!(sym_upper_bound(4, 1).unwrap(), 0);
        assert!(sym_upper_bound(4, 5).is_err());
        assert_eq!(rect_constant_rank_dim(2, 4, 2).unwrap(), 5);
        assert_eq!(rect_constant_rank_dim(3, 3, 3).unwrap(), 3);
        assert_eq!(rect_constant_rank_dim(4, 4, 4).unwrap(), 6);
        assert!(rect_constant_rank_dim(4, 3, 2).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(WitnessParams::new(6, 2).unwrap().regime(), Regime::Wide);
        assert_eq!(WitnessParams::new(5, 2).unwrap().regime(), Regime::Odd);
        assert_eq!(WitnessParams::new(4, 2).unwrap().regime(), Regime::Tight);
        assert!(WitnessParams::new(3, 2).is_err());
        assert!(WitnessParams::new(4, 0).is_err());
    }

    #[test]
    fn witness_dimensions_match_formula() {
        for n in 2..=10 {
            for r in 1..=n / 2 {
                let p = WitnessParams::new(n, r).unwrap();
                let s = witness_subspace(&p).unwrap();
                assert_eq!(
                    s.dim(),
                    max_dim_antisym(n, 2 * r).unwrap(),
                    "witness dim at n={n}, r={r}"
                );
                assert_eq!(s.base().rank(), 2 * r);
            }
        }
    }

    #[test]
    fn witness_basis_order_is_stable() {
        // Wide (6, 2): C odd-row entries column-major, then the A block.
        let s = witness_subspace(&WitnessParams::new(6, 2).unwrap()).unwrap();
        let expect = [
            e_skew(6, 1, 5),
            e_skew(6, 3, 5),
            e_skew(6, 1, 6),
            e_skew(6, 3, 6),
            e_skew(6, 1, 3),
            e_skew(6, 1, 4),
        ];
        assert_eq!(s.basis(), &expect[..]);
        // Odd (5, 2): the full last column, then the A block.
        let s = witness_subspace(&WitnessParams::new(5, 2).unwrap()).unwrap();
        let expect = [
            e_skew(5, 1, 5),
            e_skew(5, 2, 5),
            e_skew(5, 3, 5),
            e_skew(5, 4, 5),
            e_skew(5, 1, 3),
            e_skew(5, 1, 4),
        ];
        assert_eq!(s.basis(), &expect[..]);
        // Tight (4, 2): the A block alone.
        let s = witness_subspace(&WitnessParams::new(4, 2).unwrap()).unwrap();
        assert_eq!(s.basis(), &[e_skew(4, 1, 3), e_skew(4, 1, 4)][..]);
    }

    #[test]
    fn witness_rank_constant_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, r) in [(4, 2), (5, 2), (6, 2), (7, 3), (9, 2), (10, 4)] {
            let s = witness_subspace(&WitnessParams::new(n, r).unwrap()).unwrap();
            for _ in 0..25 {
                let (_, m) = s.sample_random(&mut rng);
                assert_eq!(m.rank(), 2 * r, "witness rank at n={n}, r={r}");
            }
        }
    }

    #[test]
    fn u_dimension_and_membership() {
        let u = build_u(3).unwrap();
        assert_eq!(u.dim(), 9);
        assert_eq!(u.rows(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (_, m) = u.sample_random(&mut rng);
        assert!(m.is_antisymmetric());
        // Diagonal blocks are multiples of J, off-diagonal ones antipinco.
        for i in 0..3 {
            let d = m.block(2 * i, 2 * i, 2, 2);
            assert_eq!(d.get(0, 0), &int(0));
            assert_eq!(*d.get(1, 0), -d.get(0, 1).clone());
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(is_antipinco(&m.block(2 * i, 2 * j, 2, 2)));
        }
        let ue = build_u_embedded(8, 3).unwrap();
        assert_eq!(ue.dim(), 9);
        assert_eq!(ue.rows(), 8);
        assert!(build_u_embedded(5, 3).is_err());
    }

    #[test]
    fn identity_ss_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for r in 1..=4 {
            for _ in 0..8 {
                let ls: Vec<Rat> = (0..r).map(|_| random_rat(&mut rng)).collect();
                let g = BlockGrid::random_antipinco(r, &mut rng);
                let s = random_rat(&mut rng);
                let id = identity_ss_check(&ls, &g, &s).unwrap();
                assert!(id.holds(), "identity at r={r}");
            }
        }
        // Non-antipinco grids are rejected.
        let bad = BlockGrid::new(2, vec![pinco(&int(1), &int(0))]).unwrap();
        assert!(matches!(
            identity_ss_check(&[int(1), int(2)], &bad, &int(1)),
            Err(Error::NotAntipinco)
        ));
    }

    #[test]
    fn u_elements_force_real_drops() {
        // For every nonzero u in U, det(jbar + s u) has a real root. This
        // is the property the dimension bound subtracts dim U for.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for r in 1..=3 {
            let u = build_u(r).unwrap();
            let jb = jbar(2 * r).unwrap();
            let mut done = 0;
            while done < 12 {
                let (coords, m) = u.sample_random(&mut rng);
                if coords.iter().all(Zero::is_zero) {
                    continue;
                }
                let p = PolyMatrix::pencil(&jb, &m).unwrap().det().unwrap();
                let iso = sturm_real_roots(&p).unwrap();
                assert!(iso.distinct_roots > 0, "drop forced at r={r}");
                done += 1;
            }
        }
    }

    #[test]
    fn z_span_is_positive_definite_for_pairing() {
        let (n, r, j1, j2) = (8, 2, 1, 2);
        let z = build_z(n, r, j1, j2).unwrap();
        assert_eq!(z.len(), 2 * r);
        // Gram of the pairing form on the Z basis via polarization; it
        // must be the identity, hence positive definite on the span.
        let c_part = |m: &SkewMatrixQ| m.as_matrix().block(0, 2 * r, 2 * r, n - 2 * r);
        let q = |m: &MatrixQ| quadratic_form_defpos(m, j1, j2).unwrap();
        for (a, za) in z.iter().enumerate() {
            for (b, zb) in z.iter().enumerate() {
                let sum = &c_part(za) + &c_part(zb);
                let bab = (q(&sum) - q(&c_part(za)) - q(&c_part(zb))) / int(2);
                assert_eq!(bab, if a == b { int(1) } else { int(0) });
            }
        }
        assert!(build_z(8, 2, 1, 1).is_err());
        assert!(build_z(8, 2, 0, 1).is_err());
        assert!(build_z(8, 2, 1, 7).is_err());
        assert!(build_z(5, 2, 1, 2).is_err(), "needs n >= 2r + 2");
    }

    #[test]
    fn defpos_gram_matches_form_and_signature() {
        let r = 2;
        let g = defpos_gram(r);
        assert!(g.is_symmetric());
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let c = MatrixQ::from_fn(2 * r, 3, |_, _| random_rat(&mut rng));
            // Flatten columns (j1, j2) = (1, 3) into the Gram coordinates.
            let mut x = Vec::new();
            for j in [0, 2] {
                for i in 0..2 * r {
                    x.push(c.get(i, j).clone());
                }
            }
            let xv = MatrixQ::new(4 * r, 1, x);
            let via_gram = (&xv.transpose() * &(&g * &xv)).get(0, 0).clone();
            assert_eq!(via_gram, quadratic_form_defpos(&c, 1, 3).unwrap());
        }
        assert_eq!(symmetric_signature(&g).unwrap(), (2 * r, 2 * r));
    }

    #[test]
    fn bound_ledger_values() {
        let b = bound_ledger(6, 2).unwrap();
        assert_eq!((b.dim_p, b.dim_u, b.dim_z, b.bound), (14, 4, 4, 6));
        let b = bound_ledger(8, 2).unwrap();
        assert_eq!((b.dim_p, b.dim_u, b.dim_z, b.bound), (22, 4, 8, 10));
        for n in 4..=12 {
            for r in 1..=(n - 2) / 2 {
                let b = bound_ledger(n, r).unwrap();
                assert_eq!(b.bound, max_dim_antisym(n, 2 * r).unwrap());
            }
        }
        assert!(matches!(
            bound_ledger(5, 2),
            Err(Error::RegimeMismatch { n: 5, r: 2 })
        ));
    }
}

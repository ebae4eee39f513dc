//! Affine subspaces of matrix spaces and the constant-rank certifier.
//!
//! A subspace is `base + span(basis)` inside an ambient space of general,
//! symmetric or antisymmetric matrices. The certifier decides whether every
//! element has one fixed rank `r`:
//!
//! * Rank never exceeds `r` on the subspace iff every `(r+1)`-minor of the
//!   symbolic element vanishes identically; this direction is exact.
//! * Rank at least `r` everywhere is certified by exhibiting an `r`-minor
//!   that is a nonzero constant polynomial, or, for one-parameter families,
//!   by checking that the gcd of all `r`-minors has no real root. For wider
//!   families without a constant minor the certifier hunts for an explicit
//!   failure (sampled points, then real drops along lines through the base)
//!   and otherwise returns an honest `inconclusive` rather than guessing:
//!   rank can drop at irrational points no sample grid visits.
//!
//! Sampled mode only ever refutes. Both modes report machine-checkable
//! evidence: a rational counterexample point, or a line plus an isolating
//! interval with a strict sign change for an irrational drop.

use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::multipoly::MultiPoly;
use crate::polymatrix::PolyMatrix;
use crate::rational::{random_rat, Rat};
use crate::sturm::sturm_real_roots;
use crate::unipoly::UniPoly;

/// Caps for symbolic certification; above them minor enumeration blows up
/// and callers should fall back to sampled mode.
pub const SYMBOLIC_MAX_N: usize = 8;
pub const SYMBOLIC_MAX_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    General,
    Symmetric,
    Antisymmetric,
}

impl Ambient {
    pub fn admits(&self, m: &MatrixQ) -> bool {
        match self {
            Ambient::General => true,
            Ambient::Symmetric => m.is_symmetric(),
            Ambient::Antisymmetric => m.is_antisymmetric(),
        }
    }

    fn check(&self, m: &MatrixQ) -> Result<()> {
        match self {
            Ambient::General => Ok(()),
            Ambient::Symmetric if m.is_symmetric() => Ok(()),
            Ambient::Symmetric => Err(Error::NotSymmetric),
            Ambient::Antisymmetric if m.is_antisymmetric() => Ok(()),
            Ambient::Antisymmetric => Err(Error::NotSkew),
        }
    }
}

/// `base + span(basis)` with an independent basis, all members shaped alike
/// and lying in the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMatrixSubspace {
    ambient: Ambient,
    base: MatrixQ,
    basis: Vec<MatrixQ>,
}

impl AffineMatrixSubspace {
    pub fn new(ambient: Ambient, base: MatrixQ, basis: Vec<MatrixQ>) -> Result<Self> {
        ambient.check(&base)?;
        for b in &basis {
            if (b.rows(), b.cols()) != (base.rows(), base.cols()) {
                return Err(Error::DimensionMismatch(format!(
                    "basis element is {}x{}, base is {}x{}",
                    b.rows(),
                    b.cols(),
                    base.rows(),
                    base.cols()
                )));
            }
            ambient.check(b)?;
        }
        let stacked: Vec<Vec<Rat>> = basis.iter().map(MatrixQ::vectorize).collect();
        let m = MatrixQ::from_rows(base.rows() * base.cols(), &stacked);
        if m.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(AffineMatrixSubspace {
            ambient,
            base,
            basis,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn base(&self) -> &MatrixQ {
        &self.base
    }

    pub fn basis(&self) -> &[MatrixQ] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rows(&self) -> usize {
        self.base.rows()
    }

    pub fn cols(&self) -> usize {
        self.base.cols()
    }

    /// The element at the given affine coordinates.
    pub fn sample(&self, coords: &[Rat]) -> Result<MatrixQ> {
        if coords.len() != self.basis.len() {
            return Err(Error::CoordinateCount {
                expected: self.basis.len(),
                got: coords.len(),
            });
        }
        let mut m = self.base.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        Ok(m)
    }

    /// A random element under the bounded-rational coordinate policy.
    pub fn sample_random(&self, rng: &mut ChaCha8Rng) -> (Vec<Rat>, MatrixQ) {
        let coords: Vec<Rat> = (0..self.dim()).map(|_| random_rat(rng)).collect();
        let m = self.sample(&coords).expect("coordinate count matches");
        (coords, m)
    }

    /// Maps the whole family through `M -> Q^T M Q`. Rank and ambient type
    /// are preserved because `Q` is invertible.
    pub fn congruence_transform(&self, q: &MatrixQ) -> Result<Self> {
        if !self.base.is_square() {
            return Err(Error::NotSquare {
                rows: self.base.rows(),
                cols: self.base.cols(),
            });
        }
        if !q.is_square() || q.rows() != self.base.rows() {
            return Err(Error::DimensionMismatch(format!(
                "transform is {}x{}, ambient needs {0}x{0}",
                q.rows(),
                q.cols()
            )));
        }
        if q.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let qt = q.transpose();
        let map = |m: &MatrixQ| &(&qt * m) * q;
        AffineMatrixSubspace::new(
            self.ambient,
            map(&self.base),
            self.basis.iter().map(map).collect(),
        )
    }

    /// Adds one direction to the linear part; errors if it is dependent.
    pub fn extend(&self, dir: MatrixQ) -> Result<Self> {
        let mut basis = self.basis.clone();
        basis.push(dir);
        AffineMatrixSubspace::new(self.ambient, self.base.clone(), basis).map_err(|e| {
            if matches!(e, Error::DependentBasis) {
                Error::DependentDirection
            } else {
                e
            }
        })
    }

    /// Symbolic element `base + sum t_k basis_k`.
    pub fn to_poly_matrix(&self) -> PolyMatrix<MultiPoly> {
        PolyMatrix::from_affine(&self.base, &self.basis)
    }
}

/// Dimension of the image of `span(vectors)` under projection onto the
/// listed 1-based coordinates.
pub fn coordinate_projection(vectors: &[Vec<Rat>], indices: &[usize]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let h = vectors[0].len();
    for v in vectors {
        if v.len() != h {
            return Err(Error::DimensionMismatch(
                "vectors of unequal length".to_string(),
            ));
        }
    }
    for &i in indices {
        if i == 0 || i > h {
            return Err(Error::IndexOutOfRange(format!(
                "coordinate {i} of R^{h} (1-based)"
            )));
        }
    }
    let rows: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| indices.iter().map(|&i| v[i - 1].clone()).collect())
        .collect();
    Ok(MatrixQ::from_rows(indices.len(), &rows).rank())
}

/// Whether an invertible matrix loses rank somewhere on the real line
/// `m0 + s d`, with an exact isolating interval when it does.
#[derive(Clone, Debug)]
pub struct LineRankDrop {
    pub drops: bool,
    /// Open interval around the smallest real drop parameter; the
    /// square-free part of the pencil determinant changes sign across it.
    pub interval: Option<(Rat, Rat)>,
    pub pencil_det: UniPoly,
    pub square_free: UniPoly,
}

/// Pre: `m0` square and invertible. `det(m0 + s d)` is then a nonzero
/// polynomial; rank drops on the line iff it has a real root.
pub fn line_rank_drop(m0: &MatrixQ, d: &MatrixQ) -> Result<LineRankDrop> {
    if !m0.is_square() {
        return Err(Error::NotSquare {
            rows: m0.rows(),
            cols: m0.cols(),
        });
    }
    if m0.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let p = PolyMatrix::pencil(m0, d)?.det()?;
    debug_assert!(!p.is_zero(), "det(m0) != 0 forces a nonzero pencil det");
    let iso = sturm_real_roots(&p)?;
    Ok(LineRankDrop {
        drops: iso.distinct_roots > 0,
        interval: iso.intervals.first().cloned(),
        pencil_det: p,
        square_free: iso.square_free,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertMode {
    Symbolic,
    Sampled,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConstantRank,
    NotConstantRank,
    Inconclusive,
}

/// Machine-checkable support for a verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// All `(r+1)`-minors vanish identically and rank stays at least `r`
    /// everywhere for the stated reason.
    SymbolicProof {
        minors_checked: usize,
        lower_bound: String,
        /// 1-based rows/columns of a constant nonzero `r`-minor, when that
        /// is the lower-bound mechanism.
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_minor: Option<(Vec<usize>, Vec<usize>)>,
    },
    /// Exact coordinates where the rank differs from the target.
    CounterexamplePoint {
        #[serde(with = "crate::io::rat_vec")]
        point: Vec<Rat>,
        rank: usize,
    },
    /// The rank drops at a real (possibly irrational) parameter on the line
    /// `point + s * direction` in coordinate space; the interval isolates
    /// one such parameter.
    RealDropLine {
        #[serde(with = "crate::io::rat_vec")]
        point: Vec<Rat>,
        #[serde(with = "crate::io::rat_vec")]
        direction: Vec<Rat>,
        #[serde(with = "crate::io::rat_pair")]
        interval: (Rat, Rat),
    },
    /// Sampled mode ran out of budget without finding a refutation.
    SamplesPassed { samples: usize },
    /// Symbolic mode proved rank never exceeds the target but could not
    /// settle the lower bound; no refutation was found either.
    SearchExhausted { samples: usize, lines: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificationReport {
    pub mode: CertMode,
    pub rank: usize,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

#[derive(Clone, Copy, Debug)]
pub struct CertOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            seed: 0,
            samples: 200,
        }
    }
}

/// Decides or refutes constant rank `r` for the family.
///
/// `Auto` resolves to symbolic within the caps (`n <= 8`, `dim <= 12`) and
/// to sampled beyond them; explicit symbolic mode above the caps is an
/// error. Symbolic verdicts are exact; see the module docs for when an
/// `inconclusive` can appear.
pub fn certify_constant_rank(
    s: &AffineMatrixSubspace,
    rank: usize,
    mode: CertMode,
    opts: &CertOptions,
) -> Result<CertificationReport> {
    let (rows, cols) = (s.rows(), s.cols());
    if rank > rows.min(cols) {
        return Err(Error::RankTooLarge { rank, rows, cols });
    }
    if s.ambient() == Ambient::Antisymmetric && rank % 2 == 1 {
        return Err(Error::OddRank(rank));
    }
    let n = rows.max(cols);
    let mode = match mode {
        CertMode::Auto => {
            if n <= SYMBOLIC_MAX_N && s.dim() <= SYMBOLIC_MAX_DIM {
                CertMode::Symbolic
            } else {
                CertMode::Sampled
            }
        }
        CertMode::Symbolic => {
            if n > SYMBOLIC_MAX_N || s.dim() > SYMBOLIC_MAX_DIM {
                return Err(Error::SymbolicCapExceeded {
                    n,
                    dim: s.dim(),
                    max_n: SYMBOLIC_MAX_N,
                    max_dim: SYMBOLIC_MAX_DIM,
                });
            }
            CertMode::Symbolic
        }
        CertMode::Sampled => CertMode::Sampled,
    };

    // A single point is decided by one exact rank computation in any mode.
    if s.dim() == 0 {
        let base_rank = s.base().rank();
        return Ok(if base_rank == rank {
            report(
                mode,
                rank,
                Verdict::ConstantRank,
                Evidence::SymbolicProof {
                    minors_checked: 0,
                    lower_bound: "single point, rank computed exactly".to_string(),
                    witness_minor: None,
                },
            )
        } else {
            report(
                mode,
                rank,
                Verdict::NotConstantRank,
                Evidence::CounterexamplePoint {
                    point: Vec::new(),
                    rank: base_rank,
                },
            )
        });
    }

    match mode {
        CertMode::Sampled => certify_sampled(s, rank, opts),
        CertMode::Symbolic => certify_symbolic(s, rank, opts),
        CertMode::Auto => unreachable!("resolved above"),
    }
}

fn report(
    mode: CertMode,
    rank: usize,
    verdict: Verdict,
    evidence: Evidence,
) -> CertificationReport {
    CertificationReport {
        mode,
        rank,
        verdict,
        evidence,
    }
}

fn certify_sampled(
    s: &AffineMatrixSubspace,
    rank: usize,
    opts: &CertOptions,
) -> Result<CertificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let (coords, m) = s.sample_random(&mut rng);
        let got = m.rank();
        if got != rank {
            return Ok(report(
                CertMode::Sampled,
                rank,
                Verdict::NotConstantRank,
                Evidence::CounterexamplePoint {
                    point: coords,
                    rank: got,
                },
            ));
        }
    }
    Ok(report(
        CertMode::Sampled,
        rank,
        Verdict::Inconclusive,
        Evidence::SamplesPassed {
            samples: opts.samples,
        },
    ))
}

/// All size-`k` minors of the symbolic element, paired with their 0-based
/// row/column selections. `k = 0` yields the single empty minor `1`.
fn all_minors(p: &PolyMatrix<MultiPoly>, k: usize) -> Vec<(Vec<usize>, Vec<usize>, MultiPoly)> {
    use itertools::Itertools;
    let mut out = Vec::new();
    if k > p.rows() || k > p.cols() {
        return out;
    }
    for rows in (0..p.rows()).combinations(k) {
        for cols in (0..p.cols()).combinations(k) {
            let det = p.select(&rows, &cols).det().expect("square selection");
            out.push((rows.clone(), cols, det));
        }
    }
    out
}

fn certify_symbolic(
    s: &AffineMatrixSubspace,
    rank: usize,
    opts: &CertOptions,
) -> Result<CertificationReport> {
    let mode = CertMode::Symbolic;
    let p = s.to_poly_matrix();

    // Upper bound: every (rank+1)-minor must vanish identically; a nonzero
    // one pins down a rational point of larger rank.
    let over_minors = all_minors(&p, rank + 1);
    let minors_checked = over_minors.len();
    for (_, _, det) in &over_minors {
        if !det.is_zero() {
            let point = det.nonvanishing_point()?;
            let got = s.sample(&point)?.rank();
            debug_assert!(got > rank);
            return Ok(report(
                mode,
                rank,
                Verdict::NotConstantRank,
                Evidence::CounterexamplePoint { point, rank: got },
            ));
        }
    }
    drop(over_minors);

    // Lower bound. Rank at the base must already be exact.
    let profile = s.base().pivot_profile();
    if profile.rank != rank {
        return Ok(report(
            mode,
            rank,
            Verdict::NotConstantRank,
            Evidence::CounterexamplePoint {
                point: vec![Rat::zero(); s.dim()],
                rank: profile.rank,
            },
        ));
    }
    if rank == 0 {
        // All 1-minors vanish identically: the family is the zero matrix.
        return Ok(report(
            mode,
            rank,
            Verdict::ConstantRank,
            Evidence::SymbolicProof {
                minors_checked,
                lower_bound: "rank 0 everywhere".to_string(),
                witness_minor: None,
            },
        ));
    }

    // A constant nonzero rank-minor certifies the lower bound everywhere.
    // Try the base's own pivot minor first, then scan the rest.
    let rank_minors = all_minors(&p, rank);
    let pivot_key: (Vec<usize>, Vec<usize>) =
        (profile.pivot_rows.clone(), profile.pivot_cols.clone());
    let mut ordered: Vec<&(Vec<usize>, Vec<usize>, MultiPoly)> = rank_minors.iter().collect();
    ordered.sort_by_key(|(r, c, _)| {
        let mut rs = r.clone();
        rs.sort_unstable();
        (rs != pivot_key.0 || *c != pivot_key.1) as u8
    });
    for (rows, cols, det) in ordered {
        if let Some(c) = det.as_constant() {
            if !c.is_zero() {
                return Ok(report(
                    mode,
                    rank,
                    Verdict::ConstantRank,
                    Evidence::SymbolicProof {
                        minors_checked,
                        lower_bound: format!("constant nonzero {rank}-minor, value {c}"),
                        witness_minor: Some((
                            rows.iter().map(|i| i + 1).collect(),
                            cols.iter().map(|j| j + 1).collect(),
                        )),
                    },
                ));
            }
        }
    }

    // One-parameter families are fully decidable: the rank-minors share a
    // real zero iff their gcd has a real root.
    if s.dim() == 1 {
        let polys: Vec<UniPoly> = rank_minors
            .iter()
            .map(|(_, _, d)| d.restrict_line(&[Rat::zero()], &[Rat::from_integer(1.into())]))
            .collect();
        let mut g = UniPoly::zero();
        for q in &polys {
            g = g.gcd(q);
        }
        debug_assert!(!g.is_zero(), "base rank equals target, some minor is nonzero");
        let iso = sturm_real_roots(&g)?;
        return Ok(if iso.distinct_roots == 0 {
            report(
                mode,
                rank,
                Verdict::ConstantRank,
                Evidence::SymbolicProof {
                    minors_checked,
                    lower_bound: format!(
                        "gcd of all {rank}-minors along the parameter line has no real root"
                    ),
                    witness_minor: None,
                },
            )
        } else {
            report(
                mode,
                rank,
                Verdict::NotConstantRank,
                Evidence::RealDropLine {
                    point: vec![Rat::zero()],
                    direction: vec![Rat::from_integer(1.into())],
                    interval: iso.intervals[0].clone(),
                },
            )
        });
    }

    // No constant minor and more than one parameter: hunt for an explicit
    // failure; rank cannot exceed the target, so only drops matter.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let (coords, m) = s.sample_random(&mut rng);
        let got = m.rank();
        if got != rank {
            return Ok(report(
                mode,
                rank,
                Verdict::NotConstantRank,
                Evidence::CounterexamplePoint {
                    point: coords,
                    rank: got,
                },
            ));
        }
    }
    let mut directions: Vec<Vec<Rat>> = Vec::new();
    for i in 0..s.dim() {
        let mut d = vec![Rat::zero(); s.dim()];
        d[i] = Rat::from_integer(1.into());
        directions.push(d);
    }
    directions.push(vec![Rat::from_integer(1.into()); s.dim()]);
    for _ in 0..16 {
        directions.push((0..s.dim()).map(|_| random_rat(&mut rng)).collect());
    }
    let origin = vec![Rat::zero(); s.dim()];
    let lines = directions.len();
    for dir in directions {
        if dir.iter().all(Zero::is_zero) {
            continue;
        }
        let mut g = UniPoly::zero();
        for (_, _, det) in &rank_minors {
            g = g.gcd(&det.restrict_line(&origin, &dir));
        }
        // g(0) != 0 because the base pivot minor is nonzero at the origin.
        if g.is_zero() {
            continue;
        }
        let iso = sturm_real_roots(&g)?;
        if iso.distinct_roots > 0 {
            return Ok(report(
                mode,
                rank,
                Verdict::NotConstantRank,
                Evidence::RealDropLine {
                    point: origin,
                    direction: dir,
                    interval: iso.intervals[0].clone(),
                },
            ));
        }
    }
    Ok(report(
        mode,
        rank,
        Verdict::Inconclusive,
        Evidence::SearchExhausted {
            samples: opts.samples,
            lines,
        },
    ))
}

//! Exact real-root counting and isolation via Sturm chains.
//!
//! The input is first reduced to its square-free part `q`, which has the
//! same real roots, all simple. The Sturm chain of `q` counts roots in a
//! half-open interval `(a, b]` as the drop in sign variations, which makes
//! bisection exact even when a bisection midpoint happens to be a root.
//! Reported intervals are then normalized so that both endpoints are
//! rational non-roots with `q(lo) * q(hi) < 0` and exactly one root inside,
//! which downstream code can verify with two evaluations.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{sign, Rat};
use crate::unipoly::UniPoly;

/// Outcome of isolating the real roots of a polynomial.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    /// Number of distinct real roots.
    pub distinct_roots: usize,
    /// One open interval `(lo, hi)` per distinct root, sorted ascending.
    /// The square-free part changes sign strictly across each interval.
    pub intervals: Vec<(Rat, Rat)>,
    /// Square-free part of the input; the sign-change guarantee refers to it.
    pub square_free: UniPoly,
}

/// Isolates the distinct real roots of `p` exactly.
///
/// Errors on the zero polynomial, whose root set is all of the reals.
pub fn sturm_real_roots(p: &UniPoly) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = p.square_free_part();
    if q.degree() == Some(0) {
        return Ok(RootIsolation {
            distinct_roots: 0,
            intervals: Vec::new(),
            square_free: q,
        });
    }
    let chain = sturm_chain(&q);
    let bound = cauchy_bound(&q);
    let lo = -&bound;
    let hi = bound;
    // All real roots lie strictly inside (-bound, bound).
    let mut intervals = Vec::new();
    isolate(&chain, &lo, &hi, count(&chain, &lo, &hi), &mut intervals);
    let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(intervals.len());
    let mut floor = lo;
    for (a, b) in intervals {
        let iv = normalize_interval(&chain, &q, a, b, &floor);
        floor = iv.1.clone();
        out.push(iv);
    }
    Ok(RootIsolation {
        distinct_roots: out.len(),
        intervals: out,
        square_free: q,
    })
}

/// Sturm chain of a square-free polynomial: s0 = q, s1 = q', then negated
/// remainders until a constant. Members are scaled by positive constants
/// only, which leaves sign variations untouched.
fn sturm_chain(q: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![positive_scale(q.clone()), positive_scale(q.derivative())];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[k - 1].degree() == Some(0) {
            break;
        }
        let rem = chain[k - 2].div_rem(&chain[k - 1]).expect("nonzero").1;
        chain.push(positive_scale(-&rem));
    }
    chain
}

/// Divides by the absolute value of the leading coefficient to control
/// coefficient growth; preserves every sign the chain cares about.
fn positive_scale(p: UniPoly) -> UniPoly {
    match p.leading() {
        Some(l) if !l.abs().is_one() => {
            let inv = Rat::one() / l.abs();
            p.scale(&inv)
        }
        _ => p,
    }
}

/// Sign variations of the chain at `x`, zeros skipped.
fn variations(chain: &[UniPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of roots of the square-free polynomial in `(lo, hi]`.
fn count(chain: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
    variations(chain, lo) - variations(chain, hi)
}

/// `1 + max |c_i| / |c_d|`; every real root has absolute value below this.
fn cauchy_bound(q: &UniPoly) -> Rat {
    let lead = q.leading().expect("nonzero").abs();
    let mut m = Rat::zero();
    let d = q.degree().unwrap();
    for c in &q.coeffs()[..d] {
        let v = c.abs() / &lead;
        if v > m {
            m = v;
        }
    }
    m + Rat::one()
}

/// Splits `(lo, hi]` until each piece holds exactly one root.
fn isolate(chain: &[UniPoly], lo: &Rat, hi: &Rat, n: usize, out: &mut Vec<(Rat, Rat)>) {
    match n {
        0 => {}
        1 => out.push((lo.clone(), hi.clone())),
        _ => {
            let mid = (lo + hi) / Rat::from_integer(2.into());
            let left = count(chain, lo, &mid);
            isolate(chain, lo, &mid, left, out);
            isolate(chain, &mid, hi, n - left, out);
        }
    }
}

/// Turns `(lo, hi]` holding exactly one root into an open interval whose
/// endpoints are non-roots with a strict sign change. `floor` is the right
/// endpoint of the previously normalized interval; staying at or above it
/// keeps the reported intervals pairwise disjoint.
fn normalize_interval(
    chain: &[UniPoly],
    q: &UniPoly,
    mut lo: Rat,
    hi: Rat,
    floor: &Rat,
) -> (Rat, Rat) {
    let two = Rat::from_integer(2.into());
    if q.eval(&hi).is_zero() {
        // The root is exactly hi: shrink a symmetric window around it. The
        // root lies strictly above floor, so the window eventually clears it.
        let mut d = (&hi - &lo) / &two;
        loop {
            let (a, b) = (&hi - &d, &hi + &d);
            if &a >= floor
                && !q.eval(&a).is_zero()
                && !q.eval(&b).is_zero()
                && count(chain, &a, &b) == 1
            {
                debug_assert!((q.eval(&a) * q.eval(&b)).is_negative());
                return (a, b);
            }
            d = &d / &two;
        }
    }
    // Root strictly inside (lo, hi). lo may be a root shared with the
    // neighboring segment, or sit below floor; bisect toward the root
    // (which exceeds floor) until neither holds.
    let mut hi = hi;
    while q.eval(&lo).is_zero() || &lo < floor {
        let mid = (&lo + &hi) / &two;
        if q.eval(&mid).is_zero() {
            // mid is the unique root in the segment; recenter around it.
            return normalize_interval(chain, q, lo, mid, floor);
        }
        if count(chain, &mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!((q.eval(&lo) * q.eval(&hi)).is_negative());
    (lo, hi)
}

/// Narrows an isolating interval below `width` by repeated bisection,
/// keeping the strict sign-change invariant. Useful for display.
pub fn refine_interval(q: &UniPoly, interval: &(Rat, Rat), width: &Rat) -> (Rat, Rat) {
    let two = Rat::from_integer(2.into());
    let (mut lo, mut hi) = interval.clone();
    let s_lo = sign(&q.eval(&lo));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s_mid = sign(&q.eval(&mid));
        if s_mid == 0 {
            // Landed exactly on the root; recenter strictly inside the
            // current bracket, which contains no other root.
            let gap = if &mid - &lo < &hi - &mid {
                &mid - &lo
            } else {
                &hi - &mid
            };
            let d = gap / &two;
            lo = &mid - &d;
            hi = &mid + &d;
            continue;
        }
        if s_mid == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn isolate_ints(cs: &[i64]) -> RootIsolation {
        sturm_real_roots(&UniPoly::from_int_coeffs(cs)).unwrap()
    }

    fn assert_contains(iv: &(Rat, Rat), x: &Rat) {
        assert!(&iv.0 < x && x < &iv.1, "{x} not in ({}, {})", iv.0, iv.1);
    }

    #[test]
    fn double_root_counted_once() {
        // (1+s)^2: one distinct root at -1.
        let r = isolate_ints(&[1, 2, 1]);
        assert_eq!(r.distinct_roots, 1);
        assert_contains(&r.intervals[0], &int(-1));
        // Oracle: the square-free part is exactly s + 1.
        assert_eq!(r.square_free, UniPoly::from_int_coeffs(&[1, 1]));
    }

    #[test]
    fn no_real_roots() {
        // s^2 + 1
        let r = isolate_ints(&[1, 0, 1]);
        assert_eq!(r.distinct_roots, 0);
        assert!(r.intervals.is_empty());
    }

    #[test]
    fn quadratic_with_irrational_roots() {
        // s^2 - 2: two roots, +-sqrt(2); intervals must separate them.
        let r = isolate_ints(&[-2, 0, 1]);
        assert_eq!(r.distinct_roots, 2);
        assert!(r.intervals[0].1 <= r.intervals[1].0);
        // sqrt(2) is in (1.4, 1.5); refine and check the bracket.
        let iv = refine_interval(&r.square_free, &r.intervals[1], &rat(1, 100));
        assert!(iv.0 < rat(1415, 1000) && iv.1 > rat(1414, 1000));
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(matches!(
            sturm_real_roots(&UniPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
        let r = sturm_real_roots(&UniPoly::constant(int(3))).unwrap();
        assert_eq!(r.distinct_roots, 0);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // s^3 (s - 2)^2 (s + 1/2): distinct roots {-1/2, 0, 2}.
        let p = &(&UniPoly::from_int_coeffs(&[0, 0, 0, 1])
            * &UniPoly::from_roots(&[int(2), int(2)]))
            * &UniPoly::from_roots(&[rat(-1, 2)]);
        let r = sturm_real_roots(&p).unwrap();
        assert_eq!(r.distinct_roots, 3);
        assert_contains(&r.intervals[0], &rat(-1, 2));
        assert_contains(&r.intervals[1], &int(0));
        assert_contains(&r.intervals[2], &int(2));
        for iv in &r.intervals {
            let prod = r.square_free.eval(&iv.0) * r.square_free.eval(&iv.1);
            assert!(prod.is_negative(), "strict sign change required");
        }
    }

    #[test]
    fn random_root_sets_match_factored_oracle() {
        // Freeze distinct counts from a factored-form oracle: build p as a
        // product of known linear factors, then check the isolator agrees.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = rng.gen_range(0..5);
            let mut roots: Vec<Rat> = (0..k)
                .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                .collect();
            let mut p = UniPoly::from_roots(&roots);
            // Square one factor at random to add multiplicity.
            if let Some(r0) = roots.first() {
                p = &p * &UniPoly::from_roots(std::slice::from_ref(r0));
            }
            roots.sort();
            roots.dedup();
            let iso = sturm_real_roots(&p).unwrap();
            assert_eq!(iso.distinct_roots, roots.len());
            for (iv, root) in iso.intervals.iter().zip(&roots) {
                assert_contains(iv, root);
            }
        }
    }

    #[test]
    fn interval_endpoints_are_never_roots() {
        // Adjacent integer roots force bisection midpoints onto roots.
        let p = UniPoly::from_roots(&[int(-2), int(-1), int(0), int(1), int(2)]);
        let r = sturm_real_roots(&p).unwrap();
        assert_eq!(r.distinct_roots, 5);
        for iv in &r.intervals {
            assert!(!r.square_free.eval(&iv.0).is_zero());
            assert!(!r.square_free.eval(&iv.1).is_zero());
            assert!((r.square_free.eval(&iv.0) * r.square_free.eval(&iv.1)).is_negative());
        }
        for (iv, x) in r.intervals.iter().zip([-2i64, -1, 0, 1, 2]) {
            assert_contains(iv, &int(x));
        }
        // Intervals are pairwise disjoint and ascending.
        for w in r.intervals.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }
}

//! Exact rational scalars.
//!
//! Every computation in this crate runs over the rationals with
//! arbitrary-precision numerators and denominators, so ranks, determinants,
//! signatures and root counts are exact. `Rat` values are kept canonical by
//! `num`: lowest terms, positive denominator, zero stored as `0/1`.

use num::bigint::BigInt;
use num::{BigRational, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Exact scalar: an arbitrary-precision rational in lowest terms.
pub type Rat = BigRational;

/// `numer/denom` as an exact rational. Panics if `denom` is zero; use
/// [`parse_rat`] or [`checked_div`] on untrusted input.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "zero denominator");
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Division with an explicit error instead of a panic when `b` is zero.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses `p/q` or a bare integer `p`, sign on the numerator.
///
/// Rejects a zero denominator instead of panicking, which is why this does
/// not defer to `BigRational::from_str`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        None => s
            .trim()
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical `p/q` rendering; bare `p` when the denominator is one.
pub fn format_rat(x: &Rat) -> String {
    x.to_string()
}

/// Bounded random rational: numerator uniform in [-20, 20], denominator
/// uniform in [1, 10]. The bounds keep bit growth in long exact
/// computations manageable while still exercising non-integer values.
pub fn random_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=10))
}

/// Same policy as [`random_rat`] but rejects zero.
pub fn random_nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let x = random_rat(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

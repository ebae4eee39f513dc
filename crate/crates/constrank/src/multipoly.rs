//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are the affine coordinates t_1..t_d of a subspace. Terms live
//! in a `BTreeMap` keyed by exponent vectors, so iteration order and every
//! serialized artifact derived from it are deterministic.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Rat::one())
    }

    /// The variable `t_i` (0-based, `i < arity`).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut expo = vec![0; arity];
        expo[i] = 1;
        let mut p = MultiPoly::zero(arity);
        p.terms.insert(expo, Rat::one());
        p
    }

    /// Affine form `c0 + sum coeffs[i] * t_i`.
    pub fn affine(c0: Rat, coeffs: &[Rat]) -> Self {
        let arity = coeffs.len();
        let mut p = MultiPoly::constant(arity, c0);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut expo = vec![0; arity];
                expo[i] = 1;
                p.terms.insert(expo, c.clone());
            }
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` iff the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (expo, c) = self.terms.iter().next().unwrap();
                expo.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn insert(&mut self, expo: Vec<u32>, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(expo, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        let mut acc = Rat::zero();
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(expo) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `t_i = value`, keeping the arity (exponent folded away).
    pub fn partial_eval(&self, i: usize, value: &Rat) -> Self {
        assert!(i < self.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..expo[i] {
                term *= value;
            }
            let mut e = expo.clone();
            e[i] = 0;
            out.insert(e, term);
        }
        out
    }

    /// Largest exponent of `t_i` over all terms.
    pub fn max_degree(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Restriction to the line `point + s * dir` as a univariate polynomial.
    pub fn restrict_line(&self, point: &[Rat], dir: &[Rat]) -> UniPoly {
        assert_eq!(point.len(), self.arity);
        assert_eq!(dir.len(), self.arity);
        let mut acc = UniPoly::zero();
        for (expo, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &e) in expo.iter().enumerate() {
                if e > 0 {
                    let lin = UniPoly::new(vec![point[i].clone(), dir[i].clone()]);
                    term = &term * &lin.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// A rational point where the polynomial does not vanish. Errors on the
    /// zero polynomial.
    ///
    /// Fixes variables one at a time: a nonzero polynomial of degree `d` in
    /// `t_i` cannot vanish at all of the `d + 1` values `0..=d`, so some
    /// partial evaluation stays nonzero and the search never backtracks.
    pub fn nonvanishing_point(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cur = self.clone();
        let mut point = vec![Rat::zero(); self.arity];
        #[allow(clippy::needless_range_loop)] // i is a variable position, not just an index
        for i in 0..self.arity {
            let d = cur.max_degree(i);
            let mut found = false;
            for v in 0..=d {
                let value = Rat::from_integer(v.into());
                let next = cur.partial_eval(i, &value);
                if !next.is_zero() {
                    point[i] = value;
                    cur = next;
                    found = true;
                    break;
                }
            }
            debug_assert!(found, "nonzero polynomial vanished on a full grid");
        }
        debug_assert!(!self.eval(&point).is_zero());
        Ok(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn t(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn ring_basics() {
        // (t0 + t1)(t0 - t1) = t0^2 - t1^2
        let sum = t(0).add(&t(1));
        let diff = t(0).sub(&t(1));
        let prod = sum.mul(&diff);
        let expect = t(0).mul(&t(0)).sub(&t(1).mul(&t(1)));
        assert_eq!(prod, expect);
        assert!(sum.sub(&sum).is_zero());
        assert_eq!(prod.total_degree(), 2);
        assert_eq!(prod.max_degree(0), 2);
        assert_eq!(prod.max_degree(2), 0);
    }

    #[test]
    fn eval_matches_structure() {
        // p = 2 + 3 t0 t2 - t1^2 at (1, 2, 5): 2 + 15 - 4 = 13.
        let p = MultiPoly::constant(3, int(2))
            .add(&t(0).mul(&t(2)).scale(&int(3)))
            .sub(&t(1).mul(&t(1)));
        assert_eq!(p.eval(&[int(1), int(2), int(5)]), int(13));
        assert_eq!(p.partial_eval(1, &int(2)).eval(&[int(1), int(0), int(5)]), int(13));
    }

    #[test]
    fn affine_form() {
        let p = MultiPoly::affine(rat(1, 2), &[int(1), int(0), int(-3)]);
        assert_eq!(p.eval(&[int(2), int(9), int(1)]), rat(-1, 2));
        assert_eq!(p.max_degree(1), 0);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = t(0).mul(&t(1)).add(&t(0).mul(&t(1)).neg());
        assert!(p.is_zero());
        assert_eq!(p.as_constant(), Some(int(0)));
        assert_eq!(MultiPoly::constant(3, int(7)).as_constant(), Some(int(7)));
        assert_eq!(t(0).as_constant(), None);
    }

    #[test]
    fn restrict_line_expands_correctly() {
        // p = t0 * t1 on the line (1, 2) + s(3, -1): (1+3s)(2-s) = 2 + 5s - 3s^2.
        let p = MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1));
        let u = p.restrict_line(&[int(1), int(2)], &[int(3), int(-1)]);
        assert_eq!(u, UniPoly::from_int_coeffs(&[2, 5, -3]));
    }

    #[test]
    fn nonvanishing_point_is_found() {
        // t0 * (t1 - 1) vanishes at t0 = 0 and t1 = 1 but not everywhere.
        let p = MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1).sub(&MultiPoly::one(2)));
        let pt = p.nonvanishing_point().unwrap();
        assert!(!p.eval(&pt).is_zero());
        // The greedy grid picks the smallest admissible integers.
        assert_eq!(pt, vec![int(1), int(0)]);
        assert!(MultiPoly::zero(2).nonvanishing_point().is_err());
    }

    #[test]
    fn deterministic_term_order() {
        let p = t(2).add(&t(0)).add(&MultiPoly::one(3));
        let expos: Vec<Vec<u32>> = p.terms().map(|(e, _)| e.to_vec()).collect();
        assert_eq!(expos, vec![vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0]]);
    }
}

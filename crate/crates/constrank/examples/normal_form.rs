//! Congruence normal form of antisymmetric matrices.
//!
//! Every skew matrix is congruent to `jbar_2k` padded with zeros:
//! `Q^T A Q = jbar_2k (+) 0` with `Q` invertible and `rank A = 2k`. The
//! transform is computed exactly, and congruence preserves both skewness
//! and rank, which is what lets certified families be moved into a normal
//! position before structural arguments.

use constrank::constructions::{jtilde_matrix, witness_subspace, WitnessParams};
use constrank::rational::{format_rat, random_rat};
use constrank::skew::SkewMatrixQ;
use constrank::MatrixQ;
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(m: &MatrixQ) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_rat(m.get(i, j))).collect();
        println!("    [{}]", row.join(" "));
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // A random rank-4 skew 5x5 matrix and its normal form.
    let a = loop {
        let cand = SkewMatrixQ::from_upper(5, |_, _| random_rat(&mut rng));
        if cand.as_matrix().rank() == 4 {
            break cand;
        }
    };
    println!("random skew 5x5 of rank 4:");
    show(a.as_matrix());
    let (q, k) = a.skew_normal_form();
    let normal = &(&q.transpose() * a.as_matrix()) * &q;
    println!("normal form Q^T A Q (k = {k}):");
    show(&normal);
    assert_eq!(normal, jtilde_matrix(5, k));
    assert_eq!(2 * k, 4);

    // Congruence by any invertible Q preserves the rank of every element
    // of a subspace, so a scrambled witness still certifies.
    let s = witness_subspace(&WitnessParams::new(5, 2).expect("valid")).expect("constructible");
    let scramble = loop {
        let cand = MatrixQ::from_fn(5, 5, |_, _| random_rat(&mut rng));
        if !cand.det().expect("square").is_zero() {
            break cand;
        }
    };
    let moved = s.congruence_transform(&scramble).expect("invertible");
    let mut sample_rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..5 {
        let (coords, m) = moved.sample_random(&mut sample_rng);
        assert_eq!(m.rank(), 4);
        let original = s.sample(&coords).expect("same coordinates");
        assert_eq!(original.rank(), 4);
    }
    println!("\nscrambled witness (5, 2): 5 paired samples all keep rank 4");

    // Recovering the standard base: normal-form the scrambled base and the
    // family is back to a jtilde base point.
    let base = SkewMatrixQ::new(moved.base().clone()).expect("still skew");
    let (back, k2) = base.skew_normal_form();
    let recovered = moved.congruence_transform(&back).expect("invertible");
    assert_eq!(recovered.base(), &jtilde_matrix(5, k2));
    println!("base recovered to jtilde(5, {k2}) by a second congruence");
}

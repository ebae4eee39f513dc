//! Construct the maximal witness subspaces and inspect their structure.
//!
//! Every witness has base point `jtilde(n, r)` (r standard symplectic
//! blocks, then zeros) and a linear part whose shape depends on the regime;
//! the dimension always equals the closed-form maximum.

use constrank::constructions::{witness_subspace, WitnessParams};
use constrank::rational::format_rat;
use constrank::MatrixQ;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(m: &MatrixQ) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_rat(m.get(i, j))).collect();
        println!("    [{}]", row.join(" "));
    }
}

fn main() {
    for (n, r) in [(6usize, 2usize), (5, 2), (4, 2)] {
        let p = WitnessParams::new(n, r).expect("valid");
        let s = witness_subspace(&p).expect("constructible");
        println!(
            "witness n = {n}, rank = {}: regime {:?}, dimension {} (formula {})",
            p.rank(),
            p.regime(),
            s.dim(),
            p.expected_dim()
        );
        println!("  base:");
        show(s.base());
        println!("  first basis direction:");
        show(&s.basis()[0]);

        // Every sample point has the same rank, including the base itself.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let ranks: Vec<usize> = (0..5)
            .map(|_| s.sample_random(&mut rng).1.rank())
            .collect();
        println!("  ranks of base and 5 random samples: {} {ranks:?}\n", s.base().rank());
    }

    // The full table: dimension matches the formula for every 2r <= n <= 10.
    println!("dimension = formula for all (n, r) with 2 <= 2r <= n <= 10:");
    for n in 2..=10 {
        for r in 1..=n / 2 {
            let p = WitnessParams::new(n, r).expect("valid");
            let s = witness_subspace(&p).expect("constructible");
            assert_eq!(s.dim(), p.expected_dim());
        }
        println!("  n = {n}: ok");
    }
}

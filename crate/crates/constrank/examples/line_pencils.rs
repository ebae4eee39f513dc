//! Rank behavior along a line of matrices, decided exactly.
//!
//! `line_rank_drop(m0, d)` asks whether `m0 + s d` ever loses rank at a
//! real parameter `s`: it takes the determinant pencil, strips repeated
//! factors, and isolates real roots with Sturm sequences. No floating
//! point, so irrational drop parameters are located by exact brackets.

use constrank::constructions::{build_u, jbar, jtilde_matrix, t_matrix};
use constrank::rational::{format_rat, int};
use constrank::subspace::line_rank_drop;
use constrank::MatrixQ;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // Scaling the standard symplectic form: det(jbar + s jbar) = (1+s)^4,
    // one real drop at s = -1.
    let jb = jbar(4).expect("even size");
    let drop = line_rank_drop(&jb, &jb).expect("square");
    println!("jbar + s jbar:");
    println!("  drops: {}", drop.drops);
    if let Some((lo, hi)) = &drop.interval {
        println!("  isolating interval: ({}, {})", format_rat(lo), format_rat(hi));
    }

    // The identity direction never drops the rank of jbar: the pencil
    // determinant det(jbar + s I) = (s^2 + 1)^2 has no real roots.
    let id = MatrixQ::identity(4);
    let keep = line_rank_drop(&jb, &id).expect("square");
    println!("jbar + s I: drops = {}", keep.drops);

    // T(l) = diag(l_1 J, l_2 J) forces a drop at s = -1/l_i: these are the
    // directions the dimension-count argument removes from play.
    let t = t_matrix(&[int(2), int(3)]);
    let forced = line_rank_drop(&jb, &t).expect("square");
    println!(
        "jbar + s T(2,3): drops = {} (expected at s = -1/2 and -1/3)",
        forced.drops
    );
    if let Some((lo, hi)) = &forced.interval {
        println!("  first isolated root in ({}, {})", format_rat(lo), format_rat(hi));
    }

    // Every nonzero element of the comparison space U = {T(l) + R(grid)}
    // with antipinco blocks forces a real drop; 10 random samples.
    let u = build_u(2).expect("constructible");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut confirmed = 0;
    for _ in 0..10 {
        let (_, dir) = u.sample_random(&mut rng);
        if dir.entries().iter().all(num::Zero::is_zero) {
            continue;
        }
        let d = line_rank_drop(&jb, &dir).expect("square");
        assert!(d.drops, "every nonzero U element must force a drop");
        confirmed += 1;
    }
    println!("\nU-direction drops confirmed: {confirmed}/10 nonzero samples");

    // The question is only meaningful from an invertible base point:
    // jtilde(6, 2) is already rank-deficient, so the helper refuses it
    // instead of reporting a vacuous drop at s = 0.
    let tilde = jtilde_matrix(6, 2);
    let err = line_rank_drop(&tilde, &MatrixQ::identity(6));
    println!("\nsingular base rejected: {}", err.is_err());
}

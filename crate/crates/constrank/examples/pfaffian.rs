//! Pfaffians: the square root of a skew determinant, computed exactly.
//!
//! For every even-size antisymmetric matrix, `Pf(A)^2 = det(A)`; odd sizes
//! have Pf = det = 0. The sign convention makes `Pf(jbar) = +1`.

use constrank::constructions::{jbar, pinco, pinco_tilde};
use constrank::rational::{format_rat, int, random_rat};
use constrank::skew::SkewMatrixQ;
use num::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    for size in [2usize, 4, 6, 8] {
        let jb = SkewMatrixQ::new(jbar(size).expect("even")).expect("skew");
        assert!(jb.pfaffian().is_one());
        println!("Pf(jbar_{size}) = {}", format_rat(&jb.pfaffian()));
    }

    // Pf^2 = det on random skew matrices, including odd sizes where both
    // vanish.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=7 {
        let a = SkewMatrixQ::from_upper(n, |_, _| random_rat(&mut rng));
        let pf = a.pfaffian();
        let det = a.as_matrix().det().expect("square");
        assert_eq!(&pf * &pf, det);
        println!(
            "random {n} x {n}: Pf = {:>20}  Pf^2 = det checks",
            format_rat(&pf)
        );
    }

    // J times a pinco block is symmetric with determinant -(a^2 + b^2):
    // the sign is what makes pinco blocks useless for staying invertible,
    // in contrast to antipinco blocks whose J-product has det a^2 + b^2.
    let p = pinco_tilde(&pinco(&int(2), &int(-3))).expect("pinco input");
    println!(
        "\nJ * pinco(2, -3) = [[{}, {}], [{}, {}]], det = {}",
        format_rat(p.get(0, 0)),
        format_rat(p.get(0, 1)),
        format_rat(p.get(1, 0)),
        format_rat(p.get(1, 1)),
        format_rat(&p.det().expect("square"))
    );
}

//! Closed-form maximal dimensions of constant-rank affine subspaces.
//!
//! For n x n antisymmetric matrices of constant rank 2r the maximum is
//!
//! * (n - r - 1) r   when n >= 2r + 2  (wide),
//! * r (r + 1)       when n = 2r + 1   (odd),
//! * r (r - 1)       when n = 2r       (tight),
//!
//! printed here as a table, together with the companion formulas for
//! symmetric and rectangular ambients.

use constrank::constructions::{
    bound_ledger, max_dim_antisym, rect_constant_rank_dim, sym_upper_bound, WitnessParams,
};

fn main() {
    println!("antisymmetric n x n, constant rank 2r: maximal affine dimension");
    print!("{:>4}", "n\\2r");
    for rank in (2..=10).step_by(2) {
        print!("{rank:>6}");
    }
    println!();
    for n in 2..=12 {
        print!("{n:>4}");
        for rank in (2..=10).step_by(2) {
            match max_dim_antisym(n, rank) {
                Ok(d) => print!("{d:>6}"),
                Err(_) => print!("{:>6}", "-"),
            }
        }
        println!();
    }

    println!("\nregimes for rank 4 (r = 2):");
    for n in 4..=9 {
        let p = WitnessParams::new(n, 2).expect("valid");
        println!(
            "  n = {n}: {:?}, dim = {}",
            p.regime(),
            p.expected_dim()
        );
    }

    // The wide-regime bound decomposes into three dimension counts:
    // matrices with vanishing trailing block (P), the forced-drop space (U)
    // and the positive-pairing space (Z), with bound = P - U - Z.
    println!("\nwide-regime ledger entries:");
    for (n, r) in [(6, 2), (8, 2), (10, 4)] {
        let l = bound_ledger(n, r).expect("wide regime");
        println!(
            "  n = {n}, r = {r}: dim P = {:>2}, dim U = {:>2}, dim Z = {:>2} => bound {}",
            l.dim_p, l.dim_u, l.dim_z, l.bound
        );
    }

    println!("\ncompanion formulas:");
    println!(
        "  symmetric 5x5 rank 3:  {}",
        sym_upper_bound(5, 3).expect("valid")
    );
    println!(
        "  symmetric 6x6 rank 4:  {}",
        sym_upper_bound(6, 4).expect("valid")
    );
    println!(
        "  general 2x4 rank 2:    {}",
        rect_constant_rank_dim(2, 4, 2).expect("valid")
    );
    println!(
        "  general 4x4 rank 4:    {}",
        rect_constant_rank_dim(4, 4, 4).expect("valid")
    );
}

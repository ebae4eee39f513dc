//! Certify constant rank symbolically and watch a refutation happen.
//!
//! The certifier treats the family as a matrix of multivariate polynomials:
//! all (2r+1)-minors must vanish identically, and the rank stays at 2r
//! everywhere because some 2r-minor is a nonzero constant. Sampled mode
//! only ever refutes; that asymmetry is printed at the end.

use constrank::constructions::{e_skew, jtilde_matrix, witness_subspace, WitnessParams};
use constrank::io::to_json_string;
use constrank::subspace::{
    certify_constant_rank, AffineMatrixSubspace, Ambient, CertMode, CertOptions, Verdict,
};

fn main() {
    // The maximal (6, 2) witness: symbolically certified constant rank 4.
    let p = WitnessParams::new(6, 2).expect("valid");
    let s = witness_subspace(&p).expect("constructible");
    let report =
        certify_constant_rank(&s, 4, CertMode::Symbolic, &CertOptions::default()).expect("runs");
    assert_eq!(report.verdict, Verdict::ConstantRank);
    println!("witness (6, 2), dimension {}:", s.dim());
    println!("{}", to_json_string(&report).expect("serializes"));

    // Break the family on purpose: adding the direction e_skew(5, 6) lets
    // the trailing block vary, and some point jumps to rank 6.
    let broken = s.extend(e_skew(6, 5, 6)).expect("independent direction");
    let report = certify_constant_rank(&broken, 4, CertMode::Symbolic, &CertOptions::default())
        .expect("runs");
    assert_eq!(report.verdict, Verdict::NotConstantRank);
    println!("\nwitness extended by E_56 - E_65:");
    println!("{}", to_json_string(&report).expect("serializes"));

    // A family whose rank drops only at an irrational parameter: the
    // refutation is a line plus an interval isolating a real root of the
    // determinant pencil, not a rational counterexample point.
    let base = jtilde_matrix(4, 2);
    let dir = &e_skew(4, 1, 3) + &e_skew(4, 2, 4).scale(&constrank::rat(2, 1));
    let line = AffineMatrixSubspace::new(Ambient::Antisymmetric, base, vec![dir])
        .expect("skew family");
    let report = certify_constant_rank(&line, 4, CertMode::Symbolic, &CertOptions::default())
        .expect("runs");
    assert_eq!(report.verdict, Verdict::NotConstantRank);
    println!("\nline with an irrational rank drop (at s = 1/sqrt(2)):");
    println!("{}", to_json_string(&report).expect("serializes"));

    // Sampled mode on the same line: 200 random points almost surely miss
    // a measure-zero drop locus, so the verdict stays inconclusive.
    let report = certify_constant_rank(&line, 4, CertMode::Sampled, &CertOptions::default())
        .expect("runs");
    assert_eq!(report.verdict, Verdict::Inconclusive);
    println!("\nsampled mode on the same line (sampling cannot prove or find this drop):");
    println!("{}", to_json_string(&report).expect("serializes"));
}

//! Define affine matrix subspaces by hand and move them through JSON.
//!
//! A subspace is a base matrix plus an independent list of directions,
//! tagged with the ambient it must live in (general, symmetric, or
//! antisymmetric); the constructor enforces all of it, and the same
//! validation runs again when a file is loaded.

use constrank::constructions::{e_skew, jbar};
use constrank::io::{load_json, save_json, to_json_string};
use constrank::rational::int;
use constrank::subspace::{AffineMatrixSubspace, Ambient};
use constrank::{MatrixQ, Rat};

fn main() {
    // The line jbar_4 + t (E_13 - E_31): skew, one direction.
    let s = AffineMatrixSubspace::new(
        Ambient::Antisymmetric,
        jbar(4).expect("even"),
        vec![e_skew(4, 1, 3)],
    )
    .expect("valid family");
    println!("dimension {} family in {} x {} skew matrices", s.dim(), s.rows(), s.cols());

    // Points are exact affine combinations: base + 1/2 * direction.
    let point = s.sample(&[constrank::rat(1, 2)]).expect("one coordinate");
    println!("sample at t = 1/2 has rank {}", point.rank());

    // Validation catches broken inputs: a non-skew direction, then a
    // dependent basis.
    let bad_ambient = AffineMatrixSubspace::new(
        Ambient::Antisymmetric,
        jbar(4).expect("even"),
        vec![MatrixQ::identity(4)],
    );
    println!("identity direction in a skew ambient: {:?}", bad_ambient.err());
    let dependent = AffineMatrixSubspace::new(
        Ambient::Antisymmetric,
        jbar(4).expect("even"),
        vec![e_skew(4, 1, 3), e_skew(4, 1, 3).scale(&int(2))],
    );
    println!("dependent directions: {:?}", dependent.err());

    // JSON round-trip: entries are exact strings, shape re-checked on load.
    let dir = std::env::temp_dir().join("constrank_subspace_example.json");
    save_json(&dir, &s).expect("writes");
    let back: AffineMatrixSubspace = load_json(&dir).expect("valid file");
    assert_eq!(back.base(), s.base());
    assert_eq!(back.dim(), s.dim());
    std::fs::remove_file(&dir).ok();
    println!("\nserialized form:\n{}", to_json_string(&s).expect("serializes"));

    // Growing a family: extend by an independent direction, refuse a
    // dependent one.
    let grown = s.extend(e_skew(4, 2, 4)).expect("independent");
    println!("extended dimension: {}", grown.dim());
    let refused = grown.extend(e_skew(4, 1, 3).scale(&Rat::from_integer(3.into())));
    println!("re-adding a spanned direction: {:?}", refused.err());
}

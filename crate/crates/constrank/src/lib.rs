//! Exact-arithmetic toolkit for affine subspaces of matrices with constant
//! rank, centered on antisymmetric ambients.
//!
//! Everything runs over the rationals: ranks, determinants, Pfaffians,
//! signatures and real-root counts are computed exactly, so every verdict
//! the crate emits is a checked fact rather than a numerical impression.
//! The main capabilities:
//!
//! * closed-form maximal dimensions for constant-rank affine subspaces of
//!   antisymmetric matrices, with symmetric and rectangular companions
//!   ([`constructions::max_dim_antisym`] and friends);
//! * explicit witness subspaces meeting those dimensions in every regime
//!   ([`constructions::witness_subspace`]);
//! * a certifier that proves or refutes constant rank for a given family,
//!   symbolically where feasible and by seeded sampling otherwise
//!   ([`subspace::certify_constant_rank`]);
//! * verification suites for the supporting identities and projection
//!   bounds, plus a falsifier that hunts for counterexamples just past the
//!   proven dimension bounds ([`verify`]);
//! * skew normal forms, Pfaffians, Sturm-sequence real-root isolation and
//!   fraction-free determinants as reusable building blocks.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod io;
pub mod matrix;
pub mod multipoly;
pub mod polymatrix;
pub mod rational;
pub mod signature;
pub mod skew;
pub mod sturm;
pub mod subspace;
pub mod unipoly;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::MatrixQ;
pub use rational::{rat, Rat};

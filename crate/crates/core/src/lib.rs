//! Explicit kernel elements of the trace map on conjugacy classes of the
//! free group F(a,b), with exact verification.
//!
//! For each `n ≥ 1` the chain
//! `Θ_n = Σ_{σ ∈ S_2n} sgn(σ) |a·x_σ(1)⋯x_σ(2n)|`, `x_i = bⁱa`,
//! has `(2n)!` distinct classes in its support, yet its trace vanishes at
//! every representation into `GL_n` because the standard polynomial of
//! degree `2n` is an identity on `n × n` matrices. This crate builds `Θ_n`,
//! certifies the non-cancellation of its terms, and checks the vanishing
//! exactly over `Q` and over prime fields.

pub mod chains;
pub mod cli;
pub mod construction;
pub mod error;
pub mod matrix;
pub mod permutations;
pub mod rep;
pub mod scalar;
pub mod verify;
pub mod words;

pub use chains::Chain;
pub use construction::{
    build_theta, build_w, build_x, certify_homology, certify_pairwise_distinct,
};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use permutations::{enumerate_signed_permutations, EnumerationCap, SignedPermutation};
pub use rep::{random_representation, Representation};
pub use scalar::{Fp, PrimeModulus, Rational, Scalar, ScalarKind, MERSENNE_61};
pub use verify::{VerificationReport, VerifyConfig};
pub use words::{AbelianImage, CyclicWord, Generator, Letter, Syllable, Word};

//! Exact-arithmetic kernel for a level-two degenerate affine Hecke algebra.
//!
//! The crate implements, over exact rationals or over the rational function
//! field in two parameters `k1`, `k2`:
//!
//! * signed permutations of type B with their block normal form ([`words`]),
//! * the algebra with generators `x1, s1, ..., s_{n-1}` and its basis indexed
//!   by signed permutations ([`hecke`]),
//! * bipartitions, standard and semistandard tableaux, dominance and the
//!   branching graph ([`tableaux`]),
//! * content idempotents and corner (symmetrizer-like) idempotents
//!   ([`idempotent`]),
//! * two-sided ideal quotients with reduction tables ([`quotient`]),
//! * the fused permutation diagram algebra and the evaluation homomorphism
//!   onto it ([`diagram`]),
//! * seminormal matrix representations ([`rep`]).
//!
//! Everything is exact: no floating point is used anywhere. The crate is
//! `no_std` (with `alloc`); IO, JSON and the command line live in the
//! companion crate `fused-hecke-cli`.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod diagram;
pub mod error;
pub mod hecke;
pub mod idempotent;
pub(crate) mod linalg;
pub mod quotient;
pub mod rep;
pub mod scalar;
pub mod tableaux;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar, ScalarMode};

//! Exact linear algebra for matrices of differential operators over Q(x).
//!
//! The crate works in the skew ring K[d] with K = Q(x), R = Q[x] and the
//! commutation rule `d*f = f*d + f'`. On square matrices over K[d] it
//! computes:
//!
//! - the Dieudonné determinant `(det_1, d)` by noncommutative elimination,
//! - the total order (a maximum-weight assignment over entry orders),
//! - optimal majorants from assignment dual potentials,
//! - characteristic matrices and their exact determinants,
//! - the degeneracy degree `dd = tord - d`,
//! - and, when `dd = 1`, a replayable certificate that `det_1` lies in R.
//!
//! The `oredet` binary exposes these as subcommands over a JSON matrix
//! format; see the crate README.

pub mod assignment;
pub mod cli;
pub mod dd1;
pub mod dieudonne;
pub mod document;
pub mod error;
pub mod expr;
pub mod generate;
pub mod linalg;
pub mod majorant;
pub mod matrix;
pub mod order;
pub mod ore;
pub mod poly;
pub mod rational;
pub mod ratfunc;

#[cfg(test)]
pub(crate) mod testutil;

pub use dd1::{reduce, verify_membership, Dd1Certificate};
pub use dieudonne::{dieudonne_det, triangularize, DieudonneDet};
pub use error::{Error, Result};
pub use linalg::FuncMatrix;
pub use majorant::{
    char_det, characteristic_matrix, check_majorant_laws, degeneracy_degree, is_majorant,
    optimal_majorant, sample_majorants, tord_bruteforce, total_order, Majorant,
};
pub use matrix::{OreMatrix, RowOp, RowOpTranscript};
pub use order::OrderValue;
pub use ore::OreOp;
pub use poly::Poly;
pub use rational::Rational;
pub use ratfunc::{content_and_primitive, RatFunc};

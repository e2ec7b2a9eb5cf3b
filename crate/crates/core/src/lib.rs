//! Exact and adversarial verification of trace-moment bounds for sums of
//! independent positive semidefinite random matrices.
//!
//! For independent PSD random matrices `X_1, ..., X_N` with `‖X_k‖ ≤ L_k` and
//! `‖E X_k‖ = α_k L_k`, the expected trace moment `E tr(Σ X_k)^p` is bounded by
//! the value attained by the scalar Bernoulli family `X_k ∈ {L_k I, 0}`. This
//! crate computes that maximum exactly, checks every inequality the argument
//! rests on, and searches admissible families for counterexamples.
//!
//! Module map:
//!
//! - [`linalg`]: symmetric matrices, Jacobi eigensolver, PSD powers, Schatten norms.
//! - [`words`]: noncommutative words in two letters and their traces.
//! - [`checks`]: one checker per inequality, each producing a [`checks::CheckReport`].
//! - [`extremal`]: exact Bernoulli-sum moments and the binomial growth table.
//! - [`ensemble`]: finitely supported constrained ensembles, exact and Monte Carlo moments.
//! - [`search`]: hill climbing with random restarts over admissible families.
//! - [`commands`]: the reproducible runs behind the `tmx` binary.

pub mod checks;
pub mod commands;
pub mod ensemble;
pub mod error;
pub mod extremal;
pub mod linalg;
pub mod rng;
pub mod search;
pub mod sum;
pub mod trials;
pub mod words;

pub use error::{Error, Result};
pub use linalg::{
    eigh, psd_power, schatten_norm, trace_product, EigenDecomposition, Matrix, SymMatrix,
};

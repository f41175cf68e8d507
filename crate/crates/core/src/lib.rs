//! Maximum likelihood estimation and hypothesis testing for the β-model of
//! undirected random graphs.
//!
//! In the β-model every node `i` carries a parameter `β_i` and the edge
//! `{i, j}` is present independently with probability
//! `exp(β_i + β_j) / (1 + exp(β_i + β_j))`. The degree sequence is the
//! sufficient statistic, so every estimator here starts from a
//! [`DegreeSequence`].
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `std` feature to get
//! `std::error::Error` impls and the `serde` feature for serialization.
//!
//! * [`graph`]: graphs, degrees, edge probabilities and seeded sampling.
//! * [`inference`]: fixed-point MLE, log-likelihood, Fisher diagonals.
//! * [`hypothesis`]: the pairwise equality test and homogeneity tests.
//! * [`dist`]: normal, Cauchy, chi-square and related scalar kernels.

#![cfg_attr(all(not(feature = "std"), not(test)), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dist;
mod error;
pub mod graph;
pub mod hypothesis;
pub mod inference;
pub mod logistic;

pub use error::{Error, Result};
pub use graph::{
    edge_probability, sample_graph, sample_graph_seeded, BetaVector, DegreeSequence, Graph,
};
pub use hypothesis::{
    all_pair_pvalues, cauchy_combine, classic_combine, homogeneity_cauchy, homogeneity_classic,
    homogeneity_lrt, homogeneity_lrt_with_fit, pair_test, Combiner, HomogeneityResult, Method,
    PairPValues, PairTestResult,
};
pub use inference::{
    fisher_diag, log_likelihood, mle_fit, restricted_mle_homogeneous, BetaFit, FitConfig,
};

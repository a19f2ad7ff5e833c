//! Symmetric loss functions for learning with noisy labels.
//!
//! Any multi-class loss decomposes uniquely (up to constants) into a
//! symmetric loss plus a class-insensitive term; the symmetric component
//! is `L(z, y) - (1/C) sum_k L(z, k)`. Losses whose class sum is constant
//! are robust to uniform label noise: corrupted-risk minimizers coincide
//! with clean-risk minimizers. This crate implements that symmetrization
//! operator and the loss family it generates (the multi-class unhinged
//! loss, SGCE, alpha-MAE, Dirichlet-regularized losses), certifies their
//! properties numerically, and runs desk-scale noisy-label training
//! experiments, plus the closed-form linear/kernel and regression
//! extensions.
//!
//! # Modules
//!
//! - [`numerics`] - dense linear algebra, stable softmax/log-sum-exp,
//!   seeded ChaCha8 randomness.
//! - [`losses`] - the loss zoo and the symmetrization operator.
//! - [`verify`] - numerical property checks (symmetry, permutation
//!   invariance, local-unhinged linearization, remainder bounds,
//!   convexity refutation).
//! - [`noise`] - label corruption and the corrupted-risk identity oracle.
//! - [`training`] - deterministic MLP + SGD training protocol with score
//!   normalization.
//! - [`centroid`] - unhinged data centroid, trace identity, closed-form
//!   linear solution, kernel alignment.
//! - [`regression`] - continuous symmetrization, regression unhinged
//!   loss, clipped-Huber linearization, closed-form weights.
//! - [`quadrature`] - Gauss-Legendre / Gauss-Hermite rules.
//! - [`cli`] - config parsing, synthetic data, and the command layer used
//!   by the `symloss` binary.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release --example symmetrize_zoo      # the operator and the loss family
//! cargo run --release --example symmetry_checks     # property certification reports
//! cargo run --release --example local_linearization # gradients at equal-component anchors
//! cargo run --release --example noise_identity      # corrupted-risk decomposition
//! cargo run --release --example centroid_closed_form# data centroid and kernel alignment
//! cargo run --release --example regression_symmetrize # continuous symmetrization
//! cargo run --release --example train_blobs         # noisy-label robustness experiment
//! ```
//!
//! The `symloss` binary exposes the same machinery as subcommands
//! (`symcheck`, `train`, `centroid`, `regress`); see the README.

pub mod centroid;
pub mod cli;
pub mod error;
pub mod losses;
pub mod noise;
pub mod numerics;
pub mod quadrature;
pub mod regression;
pub mod training;
pub mod verify;

pub use error::{Error, Result};
pub use losses::{symmetrize, LossFunction, LossMetadata, LossSpec};
pub use numerics::{Matrix, Prng};
pub use verify::CheckReport;

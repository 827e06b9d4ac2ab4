//! Tail asymptotics for products of light-tailed risks, with every closed
//! form verified against independent numerical oracles.
//!
//! The crate has four layers:
//!
//! * [`risk`] - one-dimensional risks represented by their upper tails in
//!   log-space (Weibullian, log-Weibullian and bounded-scaler laws), with
//!   evaluation, generalized inversion, auxiliary scaling functions and
//!   inverse-transform sampling.
//! * [`asymptotics`] - closed-form constants and expansions: the product
//!   constant bundle `(A, B, p*, D)`, product-tail expansions, saddle
//!   points, norming sequences, and the supremum-over-random-interval
//!   reduction.
//! * [`oracle`] - independent ground truth: saddle-centred log-space
//!   Gauss-Kronrod quadrature of the mixing integral, conditional Monte
//!   Carlo, tail-equivalence checks, slope fitting, and verification
//!   reports (CSV/JSON).
//! * [`gauss`] - exact simulation of fractional Brownian motion (circulant
//!   embedding), suprema over random intervals, max-stable processes built
//!   from Poisson points with Gaussian increments, and triangular arrays of
//!   scaled Gaussian maxima.
//!
//! Probabilities are carried as natural logarithms throughout; the tails of
//! interest sit far below `exp(-700)` where raw probability space
//! underflows.

pub mod asymptotics;
pub mod error;
pub mod gauss;
pub mod numeric;
pub mod oracle;
pub mod parallel;
pub mod regvar;
pub mod risk;
pub mod stats;

pub use error::{Error, Result};

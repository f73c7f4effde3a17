//! Beta-ensemble matrix models viewed as finite difference schemes for the
//! stochastic Airy and Bessel operators.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Airy and Bessel functions, their zeros, log-gamma and digamma.
//! - [`randsrc`]: keyed, reproducible random streams, Brownian paths and
//!   stochastic integrals with deterministic integrands.
//! - [`linalg`]: tridiagonal eigenvalues, bidiagonal singular values, dense
//!   symmetric and generalized symmetric-definite eigenproblems.
//! - [`ensembles`]: Hermite, Laguerre and Jacobi matrix models, finite β and β = ∞.
//! - [`scalings`]: finite-difference building blocks, soft/hard edge scalings,
//!   similarity and log-decomposition identities.
//! - [`operators`]: classical spectra and Rayleigh–Ritz discretizations of the
//!   stochastic Airy and Bessel operators.
//! - [`montecarlo`]: deterministic parallel Monte Carlo harness, histograms,
//!   KS distances and CSV/JSON export.
//! - [`diagnostics`]: eigenvector smoothness profiles and ratio tests.
//! - [`cli`]: the command line front end used by the `stochop` binary.

pub mod beta;
pub mod cli;
pub mod diagnostics;
pub mod ensembles;
pub mod error;
pub mod linalg;
pub mod montecarlo;
pub mod operators;
pub mod randsrc;
pub mod scalings;
pub mod specfun;
#[cfg(test)]
mod testutil;
pub mod verify;

pub use beta::Beta;
pub use error::{Error, Result};

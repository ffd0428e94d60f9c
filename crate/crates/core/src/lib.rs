//! Numerical building blocks for periodic optimal control of a chemostat:
//! Fourier pseudospectral integration, barycentric shifted-Gegenbauer
//! quadratures on mesh partitions, Gibbs-based jump detection and two-level
//! reconstruction, the predictor-corrector solver that ties them together,
//! and the error-bound/convergence-analysis helpers used to validate each
//! piece.

pub mod analysis;
pub mod chemostat;
pub mod edges;
pub mod error;
pub mod fourier;
pub mod gegenbauer;
pub mod solver;
mod special;

pub use error::{Error, Result};

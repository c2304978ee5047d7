//! Gaussian quantum correlations of dynamical Casimir radiation.
//!
//! * [`gaussian`]: two-mode covariance matrices, symplectic invariants and
//!   spectra, physicality and logarithmic negativity.
//! * [`dce`]: experiment parameters to small parameter `f`, thermal
//!   occupations and the output covariance matrix.
//! * [`correlations`]: EPR steering, interferometric power (exact and
//!   perturbative), steering onset and critical temperatures.
//! * [`sweep`]: parameter grids, figure presets and CSV emission.

pub mod correlations;
pub mod dce;
pub mod error;
pub mod gaussian;
pub mod sweep;

pub use error::{Error, Result};

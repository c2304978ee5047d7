use thiserror::Error;

/// Errors raised by the covariance-matrix, model and correlation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("covariance matrix is not symmetric (entry ({row}, {col}) differs by {diff:e})")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("covariance matrix diagonal entry {index} is not strictly positive ({value})")]
    NonPositiveDiagonal { index: usize, value: f64 },

    #[error("symplectic spectrum is complex (radicand {0:e})")]
    ComplexSpectrum(f64),

    #[error("small parameter f = {0} is outside the perturbative model (f must be < 1)")]
    NonPerturbative(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-positive determinant in steering evaluation (det A = {det_a:e}, det V = {det_v:e})")]
    NonPositiveDeterminant { det_a: f64, det_v: f64 },

    #[error("state is unphysical: smallest symplectic eigenvalue {nu_minus} is below the vacuum value")]
    UnphysicalState { nu_minus: f64 },

    #[error("interferometric power is 0/0 for this pure state (I4 = {i4}, Y = {y:e})")]
    DegeneratePure { i4: f64, y: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

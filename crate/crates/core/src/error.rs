use alloc::string::String;

use crate::quad::QuadError;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("series did not converge: {0}")]
    Convergence(&'static str),
    #[error("kernel is singular on the diagonal r = s = {0}")]
    DiagonalSingularity(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

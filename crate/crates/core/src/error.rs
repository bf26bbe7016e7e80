use thiserror::Error;

use crate::galilean::RepId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The scalar part (or the real part of a matrix) is zero, so no inverse exists.
    #[error("element is not invertible: {0}")]
    NonInvertible(&'static str),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square or has no rows")]
    NotSquare,

    #[error("malformed {rep} element: {reason}")]
    MalformedRepElement { rep: RepId, reason: String },

    #[error("operation not supported for representation {0}")]
    Unsupported(RepId),

    #[error("homogeneous coordinates cannot be normalized (second coordinate has zero scalar part)")]
    NonNormalizable,

    #[error("Grassmann element does not have unit scalar part")]
    NotInLambda1,

    #[error("Clifford element is not of the form e3 + y e2e3 + z e1e2e3")]
    NotAPointElement,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

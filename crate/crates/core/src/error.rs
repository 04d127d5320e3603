use thiserror::Error;

use crate::descriptor::DescriptorError;
use crate::group::GroupError;
use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("invalid commutation factor: {0}")]
    InvalidFactor(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra elements have dimension {got}, expected {expected}")]
    AlgebraMismatch { expected: usize, got: usize },
    #[error("strong-grading decision requires finite G")]
    InfiniteGrading,
    #[error("{what} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

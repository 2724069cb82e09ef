use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid quantum numbers: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group element is not in SU(1,1): |alpha|^2 - |beta|^2 - 1 = {0:e}")]
    NotInGroup(f64),

    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),

    #[error("constants: {0}")]
    Constants(String),
}

pub type Result<T> = std::result::Result<T, Error>;

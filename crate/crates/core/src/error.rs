use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: argument outside the supported domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("{function}: result overflows double precision")]
    Overflow { function: &'static str },

    #[error("{function}: no convergence after {iterations} iterations")]
    NoConvergence { function: &'static str, iterations: usize },

    #[error("{function}: non-finite value produced")]
    NonFinite { function: &'static str },

    #[error("invalid parameter for {family}: {constraint}")]
    InvalidParameter { family: &'static str, constraint: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

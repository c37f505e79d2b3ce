use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported overlap: kernel value {0} is negative")]
    UnsupportedOverlap(f64),

    #[error("divergent normalization: odd parity with overlap product {0} describes the null state")]
    DivergentNormalization(f64),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid mode index: {0}")]
    InvalidIndex(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    Asymmetric(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

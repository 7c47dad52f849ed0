use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian within tolerance (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("parameter count mismatch: {0}")]
    ParamCount(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("series did not converge: last-term contribution {0:e}")]
    SeriesNotConverged(f64),

    #[error("eigensolver failed to converge after {0} sweeps")]
    EigNotConverged(usize),
}

pub type Result<A> = std::result::Result<A, Error>;

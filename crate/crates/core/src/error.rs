use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ill-conditioned: divisor magnitude {0:e} is below the threshold")]
    IllConditioned(f64),
    #[error("pole: {0}")]
    Pole(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate spectral convention: s0 + 2*s1 must be nonzero")]
    DegenerateConvention,
    #[error("series: {0}")]
    Series(String),
    #[error("missing generator image: {0}")]
    MissingGenerator(String),
    #[error("not expressible in oscillator normal form: {0}")]
    NormalForm(String),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("eigenvalue clustering is ambiguous: {0}")]
    Clustering(String),
}

pub type Result<T> = std::result::Result<T, Error>;

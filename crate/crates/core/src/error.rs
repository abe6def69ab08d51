use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("singular product: {0}")]
    SingularProduct(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("series truncation insufficient: {0}")]
    Truncation(String),
    #[error("contour rule not converged: {0}")]
    NodeCount(String),
    #[error("boundary system is degenerate: {0}")]
    DegenerateBoundary(String),
    #[error("leading coefficient vanishes, series is not a unit")]
    NonUnit,
    #[error("term beyond grade budget {0}")]
    TruncationOverflow(usize),
    #[error("bad path: {0}")]
    Path(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

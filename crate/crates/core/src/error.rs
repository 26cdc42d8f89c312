use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("keep set is empty")]
    EmptyKeepSet,

    #[error("invalid subsystem layout: {0}")]
    InvalidLayout(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid probability table: {0}")]
    InvalidProbabilityTable(String),

    #[error("incomplete basis: {0}")]
    IncompleteBasis(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("parameter {name} = {value} out of range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

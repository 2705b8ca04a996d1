use thiserror::Error;

/// Everything that can go wrong while building or checking a complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty interval: {0} is not below {1}")]
    EmptyInterval(String, String),
    #[error("endpoint {0} collides with a fraction of denominator <= {1}; shift it by eps")]
    EndpointCollision(String, i64),
    #[error("vector ({0},{1}) is not primitive with q >= 1")]
    NonPrimitiveVector(i64, i64),
    #[error("paths do not share endpoints")]
    EndpointMismatch,
    #[error("slope {0} lies outside ({1}, {2})")]
    SlopeOutsideInterval(String, String, String),
    #[error("matrix {0:?} does not act on {1}: denominator vanishes or turns negative")]
    OutsideDomain([i64; 4], String),
    #[error("matrix {0:?} does not have determinant 1")]
    NotUnimodular([i64; 4]),
    #[error("orbit sets have different totals ({0}) and ({1})")]
    TotalMismatch(String, String),
    #[error("hyperbolic orbit {0} repeated")]
    RepeatedHyperbolic(String),
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("boundary squared is nonzero: generator {0} reaches {1} in two steps")]
    DifferentialNotSquareZero(String, String),
    #[error("boundary entry {0} -> {1} does not lower the grade by one")]
    GradingViolated(String, String),
    #[error("boundary entry {0} -> {1} raises the filtration level")]
    FiltrationViolated(String, String),
    #[error("entry ({0},{1}) is out of bounds or repeated")]
    BadEntry(usize, usize),
    #[error("no common lift total for {0} and {1}")]
    NoCommonLiftTotal(String, String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;

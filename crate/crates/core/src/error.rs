use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed scalar `{0}`")]
    Scalar(String),
    #[error("malformed weight parameter `{0}`")]
    WeightParam(String),
    #[error("malformed module spec `{0}`")]
    ModuleSpec(String),
    #[error("malformed token `{0}`")]
    Token(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd index sets overlap")]
    OverlappingSets,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid dimensions (m, n) = ({m}, {n})")]
    InvalidDims { m: usize, n: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element does not lie in A·W")]
    OutsideAW,
    #[error("element does not lie in the Weyl superalgebra K(m,n)")]
    OutsideWeyl,
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("shift `{0}` is integral; the construction needs a non-integral value")]
    IntegralShift(String),
    #[error("omega operators need m >= 1")]
    NoEvenVariables,
    #[error("module does not define an action for E({0},{1})")]
    MissingGenerator(usize, usize),
    #[error("window has no interior vectors")]
    NoInterior,
    #[error("module acts trivially; the A-cover is not defined for it")]
    TrivialModule,
    #[error("coordinates are not polynomial in the formal parameters")]
    NonPolynomial,
    #[error("incompatible modules: {0}")]
    Incompatible(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

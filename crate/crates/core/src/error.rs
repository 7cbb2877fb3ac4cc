use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no root pair: degree {0} < 2")]
    NoRootPair(usize),
    #[error("not on unit circle")]
    NotOnUnitCircle,
    #[error("non-real value where a real one is required")]
    NonReal,
    #[error("singular: reduce first")]
    Singular,
    #[error("not singular")]
    NotSingular,
    #[error("use real-spectrum path")]
    RealSpectrum,
    #[error("use root-of-unity split")]
    RootOfUnity,
    #[error("normalize recursion required")]
    DominantDegenerate,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precision cap reached in {0}")]
    PrecisionCap(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("{0}")]
    Qe(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::half::HalfInt;
use crate::indices::{IndexTriple, ValidationReport};
use crate::operators::{Family, Generator};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0}")]
    InvalidTriple(ValidationReport),

    #[error("Jacobi parameters must be nonnegative (alpha = {alpha}, beta = {beta}); reduce the triple with canonical_reduce first")]
    NegativeJacobiParameter { alpha: i64, beta: i64 },

    #[error("evaluation point {0} is outside the open interval (-1, 1)")]
    OutsideInterval(f64),

    #[error("generator {0} is diagonal; use cartan_eigenvalue")]
    DiagonalGenerator(Generator),

    #[error("generator {0} is not diagonal")]
    NotDiagonal(Generator),

    #[error("family {0:?} not accepted here; expected {1}")]
    WrongFamily(Family, &'static str),

    #[error("multiplet label l = {0} must satisfy 2l ∈ ℕ")]
    InvalidMultipletLabel(HalfInt),

    #[error("Pochhammer denominator (alpha + 1)_k vanishes for alpha = {0}")]
    PochhammerPole(i64),

    #[error("associated Legendre order m = {m} must satisfy 0 <= m <= l = {l}")]
    LegendreOrder { l: i64, m: i64 },

    #[error("negative degree n = {0}")]
    NegativeDegree(i64),

    #[error("quadrature node count {0} outside 1..={max}", max = crate::quadrature::MAX_NODES)]
    QuadratureCount(usize),

    #[error("channel (m, q) = ({m}, {q}) is not a valid label pair (m - q must be an integer)")]
    InvalidChannel { m: HalfInt, q: HalfInt },

    #[error("channel (m, q) = ({m}, {q}) has no functions with l <= {l_max}")]
    EmptyChannel { m: HalfInt, q: HalfInt, l_max: HalfInt },

    #[error("{0}")]
    Parse(String),
}

impl From<ValidationReport> for Error {
    fn from(report: ValidationReport) -> Self {
        Error::InvalidTriple(report)
    }
}

impl Error {
    pub fn invalid_triple(t: IndexTriple) -> Self {
        Error::InvalidTriple(crate::indices::validate(t))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

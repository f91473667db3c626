use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit constant term")]
    NonUnitConstant,
    #[error("exp requires a zero constant term and zero offset")]
    NonZeroConstant,
    #[error("composition requires g(0)=0")]
    CompositionConstant,
    #[error("leading coefficient must be 1 at degree 1")]
    RevertLeading,
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("series offsets differ: {0} vs {1}")]
    OffsetMismatch(String, String),
    #[error("Eisenstein series need k >= 2, got k = {0}")]
    EisensteinWeight(u32),
    #[error("not quasi-modular of stated weight {0} within truncation")]
    NotQuasiModular(u32),
    #[error("truncation order {trunc} too low to separate the {monomials} monomials of weight {weight}")]
    InsufficientTruncation {
        weight: u32,
        monomials: usize,
        trunc: usize,
    },
    #[error("odd exponential-map parameter beta_{k} = {value} is nonzero")]
    OddBeta { k: usize, value: String },
    #[error("matrix size {size} too small for requested eps order {eps_order}")]
    MatrixTooSmall { size: usize, eps_order: u32 },
    #[error("truncation mismatch: need at least {needed}, have {have}")]
    TruncationMismatch { needed: usize, have: usize },
    #[error("half-integral eps power t^{0} in a public eps-series")]
    OddEpsPower(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn offsets(a: &Rational, b: &Rational) -> Self {
        Error::OffsetMismatch(crate::rational::format(a), crate::rational::format(b))
    }
}

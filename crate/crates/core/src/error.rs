use thiserror::Error;

use crate::unified::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("class set {0} is infinite over this field; supply a bound")]
    InfiniteClassSet(&'static str),
    #[error("unsupported over an infinite field: {0}")]
    UnsupportedOverInfiniteField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("not a retraction: {0}")]
    NotARetraction(String),
    #[error("extending datum fails the axioms: {}", .0.failing().join(", "))]
    AxiomsFailed(Box<AxiomReport>),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("flag datum fails: {0}")]
    FlagCheckFailed(String),
    #[error("matched pair fails: {0}")]
    MatchedPairFailed(String),
    #[error("not a factorization: {0}")]
    NotAFactorization(String),
    #[error("crossed product conditions fail: {0}")]
    CocycleConditionFailed(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("base algebra is not commutative")]
    NotCommutativeBase,
    #[error("map is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("enumeration budget exceeded: {candidates} candidates > {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("dimension {dim} exceeds the supported bound {bound}")]
    DimensionBoundExceeded { dim: usize, bound: usize },
    #[error("invalid group table: {0}")]
    NotAGroup(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable error name, used by the CLI and the C ABI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::InfiniteField => "InfiniteField",
            Error::InfiniteClassSet(_) => "InfiniteClassSet",
            Error::UnsupportedOverInfiniteField(_) => "UnsupportedOverInfiniteField",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotASubalgebra(_) => "NotASubalgebra",
            Error::NotARetraction(_) => "NotARetraction",
            Error::AxiomsFailed(_) => "AxiomsFailed",
            Error::NotACharacter(_) => "NotACharacter",
            Error::FlagCheckFailed(_) => "FlagCheckFailed",
            Error::MatchedPairFailed(_) => "MatchedPairFailed",
            Error::NotAFactorization(_) => "NotAFactorization",
            Error::CocycleConditionFailed(_) => "CocycleConditionFailed",
            Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
            Error::NotCommutativeBase => "NotCommutativeBase",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::DimensionBoundExceeded { .. } => "DimensionBoundExceeded",
            Error::NotAGroup(_) => "NotAGroup",
            Error::Usage(_) => "UsageError",
            Error::Json(_) => "JsonError",
            Error::Io(_) => "IoError",
        }
    }

    /// Errors caused by bad input rather than by a failed verification.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Usage(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::NotPrime(_)
                | Error::ReducibleModulus(_)
        )
    }
}

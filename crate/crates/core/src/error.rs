use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index {0} is negative; only K3 is defined at negative indices")]
    NegativeIndex(i64),
    #[error("index {index} is below the minimum {min} for this operation")]
    IndexTooSmall { index: i64, min: i64 },
    #[error("empty range: from {from} > to {to}")]
    InvalidRange { from: i64, to: i64 },
    #[error("unknown sequence `{0}` (expected J3, JL3 or K3)")]
    UnknownSequence(String),
    #[error("unknown engine `{0}` (expected iter, closed, matpow or binet)")]
    UnknownEngine(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("denominator constant term must be ±1, got {0}")]
    NonUnitConstant(String),
    #[error("denominator constant term is zero")]
    ZeroConstant,
    #[error("coefficient count must be at least 1")]
    EmptyRequest,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity {0} has no piecewise form")]
    NotPiecewise(String),
    #[error("arguments outside the identity domain: {0}")]
    OutOfDomain(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

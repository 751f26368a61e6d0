use alloc::string::String;

use crate::coeff::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rule {rule}: {reason}")]
    BadRule { rule: usize, reason: String },
    #[error("presentation `{0}` has no involution")]
    NoInvolution(String),
    #[error("`{name}` needs bound {needed} but is verified only to {bound}")]
    BoundExceeded { name: String, needed: u32, bound: u32 },
    #[error("table `{name}` has no entry for {word}")]
    TableBoundExceeded { name: String, word: String },
    #[error("not invertible at bound {0}")]
    NotInvertibleAtBound(u32),
    #[error("not bijective at bound {0}")]
    NotBijectiveAtBound(u32),
    #[error("no solution at bound {bound} for {target}")]
    NoSolutionAtBound { bound: u32, target: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("matched pair violates {0}")]
    MatchedPairViolation(String),
    #[error("ideal condition fails at {0}")]
    IdealConditionFailed(String),
    #[error("inner B-linearity fails at {0}")]
    InnerBLinearityFailed(String),
    #[error("not a coalgebra map: {0}")]
    NotCoalgebraMap(String),
    #[error("idempotent check failed: {0}")]
    IdempotentCheckFailed(String),
    #[error("recursion limit reached while extending `{0}`")]
    RecursionLimit(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;

//! Error types for series arithmetic and identity evaluation.
//!
//! The evaluation path never guesses: anything outside the provable window is
//! an error, a vanishing denominator factor is an error, and a sum whose term
//! valuations stop growing is rejected instead of silently truncated.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient of q^{exp} requested but the series is only known through q^{order}")]
    BeyondOrder { exp: i64, order: i64 },

    #[error("series is zero through q^{order}; its reciprocal has no computable leading term")]
    NotInvertible { order: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),

    #[error("vanishing factor in denominator: {context}")]
    ZeroDenominatorFactor { context: String },

    #[error("infinite product {product} diverges formally: factor exponents do not increase")]
    DivergentProduct { product: String },

    #[error("summand has a pole at index {point:?}: a vanishing factor carries a net negative power")]
    PoleAtTerm { point: Vec<i64> },

    #[error("sum does not converge formally: {reason}")]
    FormalDivergence { reason: String },

    #[error("q-exponent {value} at index {point:?} is not an integer")]
    NonIntegralExponent { point: Vec<i64>, value: String },

    #[error("could not certify coefficients through q^{requested}: negative valuations keep shrinking the provable window")]
    WindowTooNarrow { requested: i64 },
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog file is corrupt: {0}")]
    Corrupt(String),

    #[error("no identity with id {0:?} in the catalog")]
    UnknownIdentity(String),

    #[error("identity {id:?} has no sample named {sample:?}")]
    UnknownSample { id: String, sample: String },
}

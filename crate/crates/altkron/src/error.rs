//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::scalar::FieldSpec, crate::scalar::FieldSpec),

    #[error("variable list mismatch")]
    VariableMismatch,

    #[error("unassigned variable {0:?}")]
    UnassignedVariable(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("algebra has no unit")]
    NoUnit,

    #[error("unit axiom fails on basis element {0}")]
    UnitAxiom(usize),

    #[error("structure table index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("algebra is not associative: witness basis triple {0:?}")]
    NotAssociative([usize; 3]),

    #[error("algebra is not commutative: witness basis pair {0:?}")]
    NotCommutative([usize; 2]),

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("unknown identity name {0:?}")]
    UnknownIdentity(String),

    #[error("identity {identity} degenerates over F_{p}; use a field of characteristic 0 or > 3")]
    CharacteristicTooSmall { identity: String, p: u64 },

    #[error("coefficient ring element alpha*{0} is not central")]
    AlphaNotCentral(String),

    #[error("module action is not a unital homomorphism: {0}")]
    BadAction(String),

    #[error("skew form validation failed: {0}")]
    FormInvalid(String),

    #[error("matrix units do not satisfy the unit relations")]
    BadMatrixUnits,

    #[error("coordinatization failed at stage {stage}: {detail}")]
    StageFailed { stage: &'static str, detail: String },

    #[error("linear map is not invertible")]
    NotInvertible,

    #[error("{0}")]
    Invalid(String),

    #[error("independence certificates require characteristic 0")]
    CharZeroOnly,
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arity {arity} exceeds the limit of {limit} (set HOMCOH_MAX_ARITY to raise it)")]
    ArityLimit { arity: usize, limit: usize },
    #[error("not a morphism: {0}")]
    MorphismViolation(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("cochain is not alternating")]
    NonAlternating,
    #[error("image of basis cochain {0} lies outside the codomain cochain space")]
    ImageOutsideCodomain(usize),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("{0}")]
    Unsupported(String),
}

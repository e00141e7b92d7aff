use thiserror::Error;

use crate::exactfield::FieldTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldTag, right: FieldTag },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("associativity fails on basis triple (e{i}, e{j}, e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("unit axiom fails against basis element e{0}")]
    UnitAxiom(usize),

    #[error("module axiom fails: action(e{i})*action(e{j}) != action(e{i}*e{j})")]
    ModuleAxiom { i: usize, j: usize },

    #[error("module unit does not act as the identity")]
    ModuleUnit,

    #[error("subspace is not a two-sided ideal")]
    NotIdeal,

    #[error("subspace is not a submodule")]
    NotSubmodule,

    #[error("linear map does not commute with the action of e{0}")]
    NotModuleHom(usize),

    #[error("linear map is not an algebra homomorphism: {0}")]
    NotAlgebraHom(String),

    #[error("support of size {size} exceeds the subset-scan limit {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("evaluation points must be distinct (points {0} and {1} coincide)")]
    RepeatedPoint(usize, usize),

    #[error("not enough distinct points: need {needed}, field has {available}")]
    NotEnoughPoints { needed: usize, available: u64 },

    #[error("weight polynomial q is zero")]
    ZeroWeight,

    #[error("integration endpoints must differ")]
    DegenerateInterval,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

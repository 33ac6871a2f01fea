use thiserror::Error;

use crate::subset::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ground set of size {0} is too large")]
    GroundTooLarge(usize),

    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("element {0} repeated")]
    RepeatedElement(usize),

    #[error("not a permutation of [{n}]: {entries:?}")]
    InvalidPermutation { entries: Vec<usize>, n: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{lo} is not below {hi} in Bruhat order")]
    NotAnInterval { lo: String, hi: String },

    #[error("malformed chain: {0}")]
    MalformedChain(String),

    #[error("matroid has no bases")]
    NoBases,

    #[error("bases of unequal size: {0:?} and {1:?}")]
    UnequalBases(ElementSet, ElementSet),

    #[error("exchange axiom fails for B1 = {b1}, B2 = {b2}, x = {x}")]
    ExchangeViolation { b1: ElementSet, b2: ElementSet, x: usize },

    #[error("element {element} cannot be removed from a matroid on [{n}]")]
    BadMinor { element: usize, n: usize },

    #[error("quotient criterion must be 1, 2 or 3, got {0}")]
    UnknownCriterion(u8),

    #[error("Gale order fails at index {index}: u = {u} > l = {l}")]
    GaleViolation { index: usize, u: usize, l: usize },

    #[error("({u}, {l}) is not a good pair")]
    NotGoodPair { u: usize, l: usize },

    #[error("constituent {index} is not a quotient of constituent {next}", next = index + 1)]
    NotAQuotient { index: usize },

    #[error("constituent {index} has rank {rank}, expected {expected}")]
    WrongRank { index: usize, rank: usize, expected: usize },

    #[error("{which}-sets of the flag do not form a chain at rank {rank}")]
    NotAChain { which: &'static str, rank: usize },

    #[error("point is not a permutation: {0}")]
    NotAPermutationPoint(String),

    #[error("hyperplane {0} does not give a good split")]
    NotAGoodSplit(String),

    #[error("hyperplane out of range: {0}")]
    HyperplaneOutOfRange(String),

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("refinement disagrees with hyperplane inclusion between {0} and {1}")]
    RefinementMismatch(String, String),

    #[error("{0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

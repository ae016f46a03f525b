use thiserror::Error;

use crate::gamma::GammaWitness;

/// Everything that can go wrong when building or converting the objects in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line} has {found} cells, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("illegal character {ch:?} at line {line}, column {column}")]
    IllegalCharacter { line: usize, column: usize, ch: char },
    #[error("position ({row},{col}) is outside a {n}x{k} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        n: usize,
        k: usize,
    },
    #[error("invalid Callan sequence: {0}")]
    InvalidCallan(String),
    #[error("matrix is not Γ-free: {0}")]
    NotGammaFree(GammaWitness),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("forest is not increasing: {0}")]
    NotIncreasing(String),
    #[error("expected a single rooted tree, found {0} components")]
    NotATree(usize),
    #[error("repeated label in sequence: {0}")]
    RepeatedLabel(String),
    #[error("forest is not leftmost-valid: {0}")]
    NotLeftmostValid(String),
    #[error("forest is not properly labeled: {0}")]
    NotProperlyLabeled(String),
    #[error("not the matrix of a complete non-ambiguous forest: {0}")]
    NotCompleteNaf(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("pair has a common rise at position {0}")]
    CommonRise(usize),
    #[error("{family} enumeration is limited to {limit}, got {requested}")]
    SizeLimit {
        family: &'static str,
        limit: String,
        requested: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

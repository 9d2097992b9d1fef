use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rank: sl(n) needs n >= 2, got n = {0}")]
    InvalidRank(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot reflect in the zero vector")]
    ZeroRoot,

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    /// `position` is 1-based: the first letter whose partial root fails.
    #[error("word is not reduced: letter {position} produces a non-positive or repeated root")]
    NotReduced { position: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unimodular: det = {re} + {im}i")]
    NotUnimodular { re: f64, im: f64 },

    #[error("matrix is not special unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not unit upper triangular (deviation {0:e})")]
    NotUnipotent(f64),

    #[error("matrix is not in the cell group N_w (off-support entry {0:e})")]
    NotInCell(f64),

    #[error("Bruhat elimination found permutation {found:?}, expected {expected:?}")]
    WrongBruhatCell { expected: Vec<usize>, found: Vec<usize> },

    #[error("reconstruction error {0:e} exceeds tolerance")]
    Reconstruction(f64),

    #[error("integral diverges: factor {factor} has exponent {exponent} (needs < -1)")]
    Divergent { factor: usize, exponent: f64 },

    /// `factor` is 1-based, matching the word position.
    #[error("lambda is outside the convergence region: Re<i lambda, beta_{factor}> = {value} <= 0")]
    Inadmissible { factor: usize, value: f64 },

    #[error("Monte Carlo needs at least one sample")]
    NoSamples,

    #[error("Neumann series did not terminate after {0} steps")]
    NonTerminating(usize),

    #[error("too many positive roots ({0}) for the 64-bit exterior basis")]
    BasisTooLarge(usize),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

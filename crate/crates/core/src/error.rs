use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {0} is outside the supported range 1..=64")]
    UnsupportedDegree(usize),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("letter {letter} is outside [1, {max}]")]
    LetterOutOfRange { letter: usize, max: usize },

    #[error("word `{0}` is not reduced")]
    NotReduced(String),

    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("length {length} exceeds the enumeration guard of {bound}")]
    LengthGuard { length: usize, bound: usize },

    #[error("{0} is not boolean")]
    NotBoolean(String),

    #[error("orientation of {{{k}, {k_next}}} is undefined: both letters must lie in the support", k_next = .k + 1)]
    OrientationUndefined { k: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("position {position} is outside [1, {len}]")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    /// An internal invariant failed; indicates a bug or a false mathematical claim.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

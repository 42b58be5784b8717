use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three families that the CLI maps to exit codes:
/// malformed input (1), unmet hypotheses (2) and internal invariant
/// breaches (3).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty complex")]
    EmptyComplex,
    #[error("cell {0:?} repeats a vertex")]
    DuplicateVertex(Vec<usize>),
    #[error("cell {0:?} is not a cell of the complex")]
    UnknownCell(Vec<usize>),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("not locally closed: {0}")]
    NotLocallyClosed(String),
    #[error("sets are not nested: {0}")]
    NotNested(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("not a homology sphere: {0}")]
    NotASphere(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("classification requires dim <= 3 (got {0})")]
    DimensionTooLarge(usize),
    #[error("hypotheses unmet: {0}")]
    HypothesisUnmet(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("profile not lower-semicontinuous-realizable: {0}")]
    ProfileNotRealizable(String),
    #[error("cover is not open: {0}")]
    CoverNotOpen(String),
    #[error("no shrinking exists: {0}")]
    NoShrinking(String),
    #[error("no finite horizon: {0}")]
    NoFiniteHorizon(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("not finitely generated type: {0}")]
    NotFinitelyGenerated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionTooLarge(_)
            | Error::HypothesisUnmet(_)
            | Error::NotLocallyClosed(_)
            | Error::NotASphere(_)
            | Error::NoShrinking(_)
            | Error::NoFiniteHorizon(_)
            | Error::NotAChain(_)
            | Error::NotFinitelyGenerated(_)
            | Error::ProfileNotRealizable(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which guard tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    /// Folding moves.
    Moves,
    /// Search-tree nodes in power reading.
    Nodes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    RankMismatch {
        expected: usize,
        found: usize,
    },
    /// An element that must be nontrivial was trivial (edge generator, `g` in a power query).
    TrivialElement(&'static str),
    ZeroExponent,
    /// A budget guard was exceeded. For folding this means the benign hypotheses
    /// failed in practice; for power reading it means the double coset finiteness
    /// condition did not hold on the explored graph.
    GuardExceeded {
        guard: Guard,
        limit: u64,
    },
    /// An element does not belong to the group it was used in.
    TypeMismatch(String),
    /// A path whose edges do not compose or whose endpoints are wrong.
    InvalidPath(String),
    /// Adjustment sequence does not satisfy its membership conditions.
    InvalidSequence(String),
    Parse(String),
    /// The graph of groups is outside the supported class (non-cyclic edge groups).
    NotSupported(String),
    /// A chain generator was rejected.
    ProperPower(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::TrivialElement(what) => write!(f, "{what} must be nontrivial"),
            Error::ZeroExponent => f.write_str("exponent must be nonzero"),
            Error::GuardExceeded { guard, limit } => {
                let what = match guard {
                    Guard::Moves => "folding move",
                    Guard::Nodes => "search tree node",
                };
                write!(f, "{what} budget of {limit} exceeded")
            }
            Error::TypeMismatch(s) => write!(f, "type mismatch: {s}"),
            Error::InvalidPath(s) => write!(f, "invalid path: {s}"),
            Error::InvalidSequence(s) => write!(f, "invalid adjustment sequence: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::NotSupported(s) => write!(f, "not supported: {s}"),
            Error::ProperPower(s) => write!(f, "proper power: {s}"),
        }
    }
}

impl core::error::Error for Error {}

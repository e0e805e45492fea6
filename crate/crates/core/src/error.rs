use std::fmt;

use thiserror::Error;

/// Why a graph admits no eulerian path between the requested endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathIssue {
    /// Some vertex (or the endpoints) violates the in/out degree conditions.
    DegreeImbalance,
    /// The non-isolated part of the graph is not connected.
    Disconnected,
}

impl fmt::Display for PathIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathIssue::DegreeImbalance => write!(f, "degree imbalance"),
            PathIssue::Disconnected => write!(f, "disconnected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is not supported (need 2..=36)")]
    BadAlphabet(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("symbol '{symbol}' is not a letter below {alpha} or a diamond glyph")]
    OutOfAlphabet { symbol: char, alpha: usize },
    #[error("letter {letter} is outside the alphabet of size {alpha}")]
    BadLetter { letter: u8, alpha: usize },
    #[error("window starting at {start} with length {n} does not fit a word of length {len}")]
    BadWindow { start: usize, n: usize, len: usize },
    #[error("operation is defined for the binary alphabet only, got size {0}")]
    BinaryOnly(usize),
    #[error("{what} needs {need}, which exceeds the configured limit {limit}")]
    TooLarge {
        what: &'static str,
        need: u128,
        limit: u128,
    },
    #[error("vertex {0} is not in the graph")]
    BadVertex(u64),
    #[error("edge word must have length {expected}, got {got}")]
    BadEdgeWord { expected: usize, got: usize },
    #[error("no eulerian path: {0}")]
    NoEulerianPath(PathIssue),
    #[error("empty walk")]
    EmptyWalk,
    #[error("walk is not closed (start differs from end)")]
    OpenWalk,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("window expansions sum to {found}, universality needs exactly {expected}")]
    CountMismatch { expected: u128, found: u128 },
    #[error("cyclic diamond pattern is infeasible: {0}")]
    CyclicPattern(String),
    #[error("constructed word failed its self-check: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

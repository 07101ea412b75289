use thiserror::Error;

use crate::board::Pair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {0} is already colored")]
    EdgeAlreadyColored(Pair),
    #[error("white is not a legal move color")]
    WhiteForbidden,
    #[error("vertex {vertex} exceeds the window cap {cap}")]
    WindowCapExceeded { vertex: u64, cap: u32 },
    #[error("no white edge remains")]
    NoWhiteEdge,
    #[error("property {0} does not support this semantics")]
    UnsupportedSemantics(String),
    #[error("scripted edge {0} is not white")]
    ScriptEdgeNotWhite(Pair),
    #[error("universe has {0} edges; the exhaustive solver accepts at most {max}", max = crate::solver::MAX_EDGES)]
    UniverseTooLarge(usize),
    #[error("coordinate horizon exhausted at index {0}")]
    HorizonExhausted(u64),
    #[error("malformed transcript: {0}")]
    MalformedTranscript(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Seeker/Hider edge-query games on the complete graph over ℕ.
//!
//! Seeker repeatedly picks a white edge and Hider colors it green (an edge of
//! the hidden graph) or red (a non-edge). Seeker wins a run when some edge
//! stays white forever and the position still decides the property.

pub mod arena;
pub mod board;
pub mod error;
pub mod graph;
pub mod hider;
pub mod matching;
pub mod properties;
pub mod s0;
pub mod seeker;
pub mod solver;

pub use board::{canonical_index, pair_of, Board, Color, Pair, Transcript, Vertex};
pub use error::{Error, Result};
pub use properties::{decide, DecisionStatus, PropertyId, Semantics};

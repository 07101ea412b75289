//! Hider strategies, each paired with monitors that recheck the claims its
//! correctness rests on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::properties::PropertyId;

mod bipartite;
mod compliant;
mod connected;
mod cycle;
mod degree;
mod diameter;
mod sensitive;

pub use bipartite::{Bindings, BipartiteHider, StageBoundary, Tau2Source};
pub use compliant::{green_exposes, stranded, CautiousIsolationHider, CautiousMatchingHider, RandomHider};
pub use connected::{good_path_reach, ConnectedHider};
pub use cycle::CycleHider;
pub use degree::DegreeHider;
pub use diameter::DiameterHider;
pub use sensitive::{SensitiveHider, Witness as SensitiveWitness};

/// Data reproducing a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Edges(Vec<Pair>),
    Vertices(Vec<Vertex>),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Edges(es) => {
                let parts: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "edges [{}]", parts.join(" "))
            }
            Witness::Vertices(vs) => write!(f, "vertices {:?}", vs),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: &str, outcome: std::result::Result<(), Witness>) -> Check {
        match outcome {
            Ok(()) => Check { name: name.to_string(), pass: true, witness: None },
            Err(w) => Check { name: name.to_string(), pass: false, witness: Some(w) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub turn: usize,
    pub checks: Vec<Check>,
}

impl MonitorReport {
    pub fn new(turn: usize) -> MonitorReport {
        MonitorReport { turn, checks: Vec::new() }
    }

    pub fn push(&mut self, name: &str, outcome: std::result::Result<(), Witness>) {
        self.checks.push(Check::new(name, outcome));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Bookkeeping for the current stage of a staged strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageState {
    pub index: usize,
    /// Human-readable termination condition of the stage.
    pub guard: String,
    pub reserved: Vec<Vertex>,
}

pub trait HiderStrategy: Send {
    /// Tag plus parameters, e.g. `k-cycle:4`.
    fn id(&self) -> String;

    /// The property this strategy keeps undecided, if any.
    fn property(&self) -> Option<PropertyId>;

    /// Whether the strategy claims to keep `property` undecided forever.
    fn claims_undecided(&self) -> bool {
        self.property().is_some()
    }

    /// Color for the white edge `e`, which Seeker just played on `board`.
    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color>;

    /// Called after each move is applied to the board.
    fn observe(&mut self, _board: &Board) -> Result<()> {
        Ok(())
    }

    /// Names of the checks this strategy reports.
    fn monitor_names(&self) -> Vec<&'static str>;

    /// Every check, recomputed from scratch on `board`.
    fn monitor(&self, board: &Board) -> MonitorReport;

    /// Checks after the last move only; by default the full set.
    fn monitor_move(&self, board: &Board) -> MonitorReport {
        self.monitor(board)
    }

    fn stage(&self) -> Option<StageState> {
        None
    }
}

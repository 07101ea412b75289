use crate::board::{Board, Color, Pair};
use crate::error::Result;
use crate::properties::PropertyId;

use super::{HiderStrategy, MonitorReport, Witness as CheckWitness};

/// Fixed graphs Hider can pretend to hide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The one-way infinite path 0-1-2-...
    Path,
    /// The infinite star centred at 0.
    Star,
}

impl Witness {
    pub fn name(self) -> &'static str {
        match self {
            Witness::Path => "path",
            Witness::Star => "star",
        }
    }

    pub fn has_edge(self, e: Pair) -> bool {
        match self {
            Witness::Path => e.v() == e.u() + 1,
            Witness::Star => e.u() == 0,
        }
    }
}

/// Answers Green exactly on the edges of a fixed witness graph.
pub struct SensitiveHider {
    witness: Witness,
}

impl SensitiveHider {
    pub fn new(witness: Witness) -> SensitiveHider {
        SensitiveHider { witness }
    }

    fn check_move(&self, e: Pair, c: Color) -> std::result::Result<(), CheckWitness> {
        if (c == Color::Green) == self.witness.has_edge(e) {
            Ok(())
        } else {
            Err(CheckWitness::Edges(vec![e]))
        }
    }
}

impl HiderStrategy for SensitiveHider {
    fn id(&self) -> String {
        format!("sensitive:{}", self.witness.name())
    }

    fn property(&self) -> Option<PropertyId> {
        None
    }

    fn respond(&mut self, _board: &Board, e: Pair) -> Result<Color> {
        Ok(if self.witness.has_edge(e) { Color::Green } else { Color::Red })
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["green-is-witness"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let bad = board.history().iter().find(|&&(e, c)| self.check_move(e, c).is_err());
        r.push("green-is-witness", bad.map_or(Ok(()), |&(e, _)| Err(CheckWitness::Edges(vec![e]))));
        r
    }

    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let outcome = board.last_move().map_or(Ok(()), |(e, c)| self.check_move(e, c));
        r.push("green-is-witness", outcome);
        r
    }
}

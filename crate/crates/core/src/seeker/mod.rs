//! Seeker strategies. The forcing strategies check every Hider reply against
//! the reply their argument says is forced, and report when play leaves the
//! forced line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::board::{pair_of, Board, Color, EdgeIndex, Pair};
use crate::error::{Error, Result};
use crate::hider::{MonitorReport, Witness};

mod indep;
mod no_isolated;

pub use indep::IndependentEdgesSeeker;
pub use no_isolated::NoIsolatedSeeker;

/// Where a forcing strategy stands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ForcingVerdict {
    OnTrack,
    /// Hider left the forced line and Seeker switched to a winning trap.
    TrapEntered {
        trap: String,
        witness: Witness,
    },
    /// A reply the argument claims is forced was not; never expected.
    Refuted {
        witness: Witness,
    },
}

impl ForcingVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ForcingVerdict::Refuted { .. })
    }

    pub fn trap(trap: &str, witness: Witness) -> ForcingVerdict {
        ForcingVerdict::TrapEntered { trap: trap.to_string(), witness }
    }
}

pub trait SeekerStrategy: Send {
    fn id(&self) -> String;

    /// A white edge to play, or `None` once a finite script runs out.
    fn next(&mut self, board: &Board) -> Result<Option<Pair>>;

    /// Called after Hider's reply is on the board.
    fn observe(&mut self, _board: &Board) -> Result<()> {
        Ok(())
    }

    fn verdict(&self) -> ForcingVerdict {
        ForcingVerdict::OnTrack
    }

    /// Verdict when the run stops at `board`.
    fn conclude(&mut self, _board: &Board) -> ForcingVerdict {
        self.verdict()
    }

    /// Structural checks on positions the strategy has forced.
    fn monitor(&self, board: &Board) -> MonitorReport {
        MonitorReport::new(board.turn())
    }
}

/// Least white edge at or after `*cursor` that passes `keep`. `keep` must
/// not change its mind while the cursor is in use: skipped edges are never
/// revisited.
pub(crate) fn scan<F: Fn(Pair) -> bool>(board: &Board, cursor: &mut EdgeIndex, keep: F) -> Pair {
    let mut i = *cursor;
    loop {
        let e = pair_of(i);
        if board.is_white(e) && keep(e) {
            *cursor = i;
            return e;
        }
        i += 1;
    }
}

/// Plays every edge except one, in canonical order.
pub struct OneWhiteSeeker {
    kept: Pair,
    cursor: EdgeIndex,
}

impl OneWhiteSeeker {
    pub fn new(kept: Pair) -> OneWhiteSeeker {
        OneWhiteSeeker { kept, cursor: 0 }
    }
}

impl SeekerStrategy for OneWhiteSeeker {
    fn id(&self) -> String {
        format!("one-white:{}-{}", self.kept.u(), self.kept.v())
    }

    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        let kept = self.kept;
        Ok(Some(scan(board, &mut self.cursor, |e| e != kept)))
    }
}

/// Uniform white edge among the window plus one new vertex.
pub struct RandomSeeker {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSeeker {
    pub fn new(seed: u64) -> RandomSeeker {
        RandomSeeker { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl SeekerStrategy for RandomSeeker {
    fn id(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        let n = board.window().max(1) + 1;
        for _ in 0..256 {
            let a = self.rng.gen_range(0..n);
            let b = self.rng.gen_range(0..n);
            if a != b && board.is_white(Pair::new(a, b)) {
                return Ok(Some(Pair::new(a, b)));
            }
        }
        // Dense windows: draw among the white edges directly. The new vertex
        // keeps this list nonempty.
        let whites: Vec<Pair> =
            (0..n).flat_map(|b| (0..b).map(move |a| Pair::new(a, b))).filter(|&e| board.is_white(e)).collect();
        Ok(Some(whites[self.rng.gen_range(0..whites.len())]))
    }
}

/// Plays a fixed list of moves.
pub struct ScriptSeeker {
    name: String,
    moves: Vec<Pair>,
    at: usize,
}

impl ScriptSeeker {
    pub fn new(name: impl Into<String>, moves: Vec<Pair>) -> ScriptSeeker {
        ScriptSeeker { name: name.into(), moves, at: 0 }
    }
}

impl SeekerStrategy for ScriptSeeker {
    fn id(&self) -> String {
        format!("script:{}", self.name)
    }

    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        let Some(&e) = self.moves.get(self.at) else { return Ok(None) };
        if board.color(e) != Color::White {
            return Err(Error::ScriptEdgeNotWhite(e));
        }
        self.at += 1;
        Ok(Some(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &mut dyn SeekerStrategy, turns: usize) -> Result<Vec<Pair>> {
        let mut b = Board::new();
        let mut out = Vec::new();
        for _ in 0..turns {
            let Some(e) = s.next(&b)? else { break };
            b.play(e, Color::Red)?;
            s.observe(&b)?;
            out.push(e);
        }
        Ok(out)
    }

    #[test]
    fn one_white_examples() {
        let moves = run(&mut OneWhiteSeeker::new(Pair::new(0, 1)), 3).unwrap();
        assert_eq!(moves, vec![Pair::new(0, 2), Pair::new(1, 2), Pair::new(0, 3)]);
        let moves = run(&mut OneWhiteSeeker::new(Pair::new(0, 2)), 1).unwrap();
        assert_eq!(moves, vec![Pair::new(0, 1)]);
        let moves = run(&mut OneWhiteSeeker::new(Pair::new(3, 7)), 500).unwrap();
        assert!(!moves.contains(&Pair::new(3, 7)));
    }

    #[test]
    fn random_is_reproducible() {
        let a = run(&mut RandomSeeker::new(42), 300).unwrap();
        let b = run(&mut RandomSeeker::new(42), 300).unwrap();
        assert_eq!(a, b);
        let mut seen = std::collections::HashSet::new();
        assert!(a.iter().all(|e| seen.insert(*e)));
    }

    #[test]
    fn script_examples() {
        let twice = vec![Pair::new(0, 1), Pair::new(0, 1)];
        let err = run(&mut ScriptSeeker::new("t", twice), 5).unwrap_err();
        assert!(matches!(err, Error::ScriptEdgeNotWhite(e) if e == Pair::new(0, 1)));
        let two = vec![Pair::new(0, 1), Pair::new(2, 3)];
        assert_eq!(run(&mut ScriptSeeker::new("t", two.clone()), 5).unwrap(), two);
    }
}

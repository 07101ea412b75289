//! Hiders used as opponents for the Seeker strategies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::matching::max_matching_size;
use crate::properties::PropertyId;

use super::{HiderStrategy, MonitorReport};

/// Green or red with equal odds.
pub struct RandomHider {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomHider {
    pub fn new(seed: u64) -> RandomHider {
        RandomHider { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl HiderStrategy for RandomHider {
    fn id(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn property(&self) -> Option<PropertyId> {
        None
    }

    fn respond(&mut self, _board: &Board, _e: Pair) -> Result<Color> {
        Ok(if self.rng.gen_bool(0.5) { Color::Green } else { Color::Red })
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        Vec::new()
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        MonitorReport::new(board.turn())
    }
}

/// Against the `k`-matching Seeker: greens at random, but never an edge
/// that completes `k` independent green edges or lifts a green degree to
/// `2k - 1`.
pub struct CautiousMatchingHider {
    k: usize,
    seed: u64,
    rng: ChaCha8Rng,
}

impl CautiousMatchingHider {
    pub fn new(k: usize, seed: u64) -> CautiousMatchingHider {
        CautiousMatchingHider { k, seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn safe(&self, board: &Board, e: Pair) -> bool {
        let cap = 2 * self.k - 2;
        if e.ends().iter().any(|&v| board.degree(v, Color::Green) + 1 > cap) {
            return false;
        }
        let mut edges: Vec<Pair> = board.green_edges().collect();
        edges.push(e);
        max_matching_size(&edges) < self.k
    }
}

impl HiderStrategy for CautiousMatchingHider {
    fn id(&self) -> String {
        format!("cautious-indep:{}:{}", self.k, self.seed)
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::ContainsKIndependentEdges(self.k))
    }

    fn claims_undecided(&self) -> bool {
        false
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        let coin = self.rng.gen_bool(0.5);
        Ok(if coin && self.safe(board, e) { Color::Green } else { Color::Red })
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        Vec::new()
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        MonitorReport::new(board.turn())
    }
}

/// Against the no-isolated-vertex Seeker: never leaves a white edge between
/// two green-covered vertices, and greens whenever red would strand an
/// endpoint (all its edges into the green support red while every other
/// uncovered vertex still has a white edge into it). Otherwise greens with
/// probability `1 / patience`.
pub struct CautiousIsolationHider {
    seed: u64,
    patience: u32,
    rng: ChaCha8Rng,
}

impl CautiousIsolationHider {
    pub fn new(seed: u64, patience: u32) -> CautiousIsolationHider {
        CautiousIsolationHider { seed, patience: patience.max(1), rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

/// A white edge between two covered vertices, if greening `e` creates one.
pub fn green_exposes(board: &Board, e: Pair) -> Option<Pair> {
    let (a, b) = (e.u(), e.v());
    let covered = |v: Vertex| v == a || v == b || board.is_covered(v);
    for v in [a, b] {
        if board.is_covered(v) {
            continue;
        }
        for c in 0..board.window() {
            if c != v && Pair::new(v, c) != e && covered(c) && board.color_of(v, c) == Color::White {
                return Some(Pair::new(v, c));
            }
        }
    }
    None
}

/// Whether `x` is uncovered, every edge from `x` to the green support is
/// red, and every other uncovered window vertex has a white edge into the
/// support.
pub fn stranded(board: &Board, x: Vertex) -> bool {
    if board.is_covered(x) {
        return false;
    }
    let support: Vec<Vertex> = (0..board.window()).filter(|&v| board.is_covered(v)).collect();
    if support.is_empty() || support.iter().any(|&a| board.color_of(x, a) != Color::Red) {
        return false;
    }
    (0..board.window())
        .filter(|&y| y != x && !board.is_covered(y))
        .all(|y| support.iter().any(|&a| board.color_of(y, a) == Color::White))
}

impl HiderStrategy for CautiousIsolationHider {
    fn id(&self) -> String {
        format!("cautious-isolation:{}:{}", self.patience, self.seed)
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::NoIsolatedVertex)
    }

    fn claims_undecided(&self) -> bool {
        false
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        if green_exposes(board, e).is_some() {
            return Ok(Color::Red);
        }
        let after = board.played(e, Color::Red)?;
        if e.ends().iter().any(|&v| stranded(&after, v)) {
            return Ok(Color::Green);
        }
        let coin = self.rng.gen_ratio(1, self.patience);
        Ok(if coin { Color::Green } else { Color::Red })
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        Vec::new()
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        MonitorReport::new(board.turn())
    }
}

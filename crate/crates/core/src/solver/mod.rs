//! Exact solving of finite Seeker/Hider games.
//!
//! A position is the full coloring of the edge universe; move order is
//! forgotten, so the game tree collapses into a DAG of at most `3^m`
//! positions for `m` edges. Each position is memoized under its base-3 code.

mod appendix;
mod bipartite;
mod classical;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{Color, Pair};
use crate::error::{Error, Result};

pub use appendix::{figure_positions, match_figure, verify_appendix, AppendixPolicy, AppendixReport, FigureMatch};
pub use bipartite::{
    blacksquare, cond_i, cond_ii, cond_iii, make_bipartite_subgame, subgame_universe, Symmetry, Tau0, Tau1, K, L, N, X,
    Y,
};
pub use classical::{classical_elusiveness, classical_elusiveness_with_order, classical_game, Elusiveness};

/// Largest edge universe the solver accepts.
pub const MAX_EDGES: usize = 15;

pub type Predicate = Box<dyn Fn(&[Pair], &[Color]) -> bool + Send + Sync>;

/// A finite game: a list of edges, their starting colors, and the rules for
/// when play stops and who has won. A position without white edges always
/// stops play.
pub struct FiniteGameSpec {
    pub name: String,
    pub universe: Vec<Pair>,
    pub initial: Vec<Color>,
    terminal: Predicate,
    hider_wins: Predicate,
}

impl fmt::Debug for FiniteGameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGameSpec")
            .field("name", &self.name)
            .field("universe", &self.universe)
            .field("initial", &self.initial)
            .finish_non_exhaustive()
    }
}

impl FiniteGameSpec {
    pub fn new(
        name: impl Into<String>,
        universe: Vec<Pair>,
        initial: Vec<Color>,
        terminal: Predicate,
        hider_wins: Predicate,
    ) -> Result<Self> {
        if universe.len() != initial.len() {
            return Err(Error::Invalid("initial coloring does not match the universe".into()));
        }
        let mut sorted = universe.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != universe.len() {
            return Err(Error::Invalid("universe lists an edge twice".into()));
        }
        Ok(FiniteGameSpec { name: name.into(), universe, initial, terminal, hider_wins })
    }

    pub fn is_terminal(&self, colors: &[Color]) -> bool {
        !colors.contains(&Color::White) || (self.terminal)(&self.universe, colors)
    }

    pub fn hider_wins(&self, colors: &[Color]) -> bool {
        (self.hider_wins)(&self.universe, colors)
    }

    pub fn position_of(&self, e: Pair) -> Option<usize> {
        self.universe.iter().position(|&x| x == e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Seeker,
    Hider,
}

/// A history-aware Hider policy on a finite game. Edges are positions in the
/// game's universe; `history` lists the moves played from the initial
/// position.
pub trait HiderPolicy {
    fn reply(&self, colors: &[Color], history: &[(usize, Color)], edge: usize) -> Color;
}

impl<F: Fn(&[Color], &[(usize, Color)], usize) -> Color> HiderPolicy for F {
    fn reply(&self, colors: &[Color], history: &[(usize, Color)], edge: usize) -> Color {
        self(colors, history, edge)
    }
}

/// Hider replies indexed by position code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HiderTable {
    pub replies: HashMap<(u32, usize), Color>,
}

impl HiderPolicy for HiderTable {
    fn reply(&self, colors: &[Color], _history: &[(usize, Color)], edge: usize) -> Color {
        self.replies.get(&(encode(colors), edge)).copied().unwrap_or(Color::Red)
    }
}

/// Seeker moves indexed by position code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeekerTable {
    pub moves: HashMap<u32, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    Hider(HiderTable),
    Seeker(SeekerTable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameValue {
    pub winner: Winner,
    pub positions_explored: usize,
    pub policy: Policy,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub winner: Winner,
    pub positions_explored: usize,
}

impl GameValue {
    pub fn summary(&self) -> SolveSummary {
        SolveSummary { winner: self.winner, positions_explored: self.positions_explored }
    }
}

fn digit(c: Color) -> u32 {
    match c {
        Color::White => 0,
        Color::Green => 1,
        Color::Red => 2,
    }
}

/// Base-3 code of a coloring (white 0, green 1, red 2; first edge lowest).
pub fn encode(colors: &[Color]) -> u32 {
    colors.iter().rev().fold(0, |acc, &c| acc * 3 + digit(c))
}

const UNKNOWN: u8 = 0;
const SEEKER: u8 = 1;
const HIDER: u8 = 2;

struct Solver<'a> {
    spec: &'a FiniteGameSpec,
    order: Vec<usize>,
    pow: Vec<u32>,
    memo: Vec<u8>,
    explored: usize,
}

impl<'a> Solver<'a> {
    fn new(spec: &'a FiniteGameSpec, order: Vec<usize>) -> Result<Self> {
        let m = spec.universe.len();
        if m > MAX_EDGES {
            return Err(Error::UniverseTooLarge(m));
        }
        let pow: Vec<u32> = (0..m).map(|i| 3u32.pow(i as u32)).collect();
        Ok(Solver { spec, order, pow, memo: vec![UNKNOWN; 3usize.pow(m as u32)], explored: 0 })
    }

    fn value(&mut self, colors: &mut [Color], code: u32) -> u8 {
        let cached = self.memo[code as usize];
        if cached != UNKNOWN {
            return cached;
        }
        self.explored += 1;
        let v = if self.spec.is_terminal(colors) {
            if self.spec.hider_wins(colors) {
                HIDER
            } else {
                SEEKER
            }
        } else {
            let mut v = HIDER;
            for i in 0..self.order.len() {
                let e = self.order[i];
                if colors[e] == Color::White && self.seeker_wins_with(colors, code, e) {
                    v = SEEKER;
                    break;
                }
            }
            v
        };
        self.memo[code as usize] = v;
        v
    }

    fn child(&mut self, colors: &mut [Color], code: u32, e: usize, c: Color) -> u8 {
        colors[e] = c;
        let v = self.value(colors, code + digit(c) * self.pow[e]);
        colors[e] = Color::White;
        v
    }

    fn seeker_wins_with(&mut self, colors: &mut [Color], code: u32, e: usize) -> bool {
        self.child(colors, code, e, Color::Green) == SEEKER && self.child(colors, code, e, Color::Red) == SEEKER
    }

    fn extract_hider(&mut self, colors: &mut [Color], code: u32, table: &mut HiderTable, seen: &mut Vec<bool>) {
        if seen[code as usize] || self.spec.is_terminal(colors) {
            return;
        }
        seen[code as usize] = true;
        for e in 0..colors.len() {
            if colors[e] != Color::White {
                continue;
            }
            let c = [Color::Green, Color::Red]
                .into_iter()
                .find(|&c| self.child(colors, code, e, c) == HIDER)
                .expect("a Hider-won position has a Hider-won reply to every move");
            table.replies.insert((code, e), c);
            colors[e] = c;
            self.extract_hider(colors, code + digit(c) * self.pow[e], table, seen);
            colors[e] = Color::White;
        }
    }

    fn extract_seeker(&mut self, colors: &mut [Color], code: u32, table: &mut SeekerTable, seen: &mut Vec<bool>) {
        if seen[code as usize] || self.spec.is_terminal(colors) {
            return;
        }
        seen[code as usize] = true;
        let e = (0..colors.len())
            .find(|&e| colors[e] == Color::White && self.seeker_wins_with(colors, code, e))
            .expect("a Seeker-won position has a winning move");
        table.moves.insert(code, e);
        for c in [Color::Green, Color::Red] {
            colors[e] = c;
            self.extract_seeker(colors, code + digit(c) * self.pow[e], table, seen);
        }
        colors[e] = Color::White;
    }
}

/// Solves the game, trying Seeker moves in universe order.
pub fn solve(spec: &FiniteGameSpec) -> Result<GameValue> {
    solve_with_order(spec, &(0..spec.universe.len()).collect::<Vec<_>>())
}

/// Solves the game, trying Seeker moves in the given order. The winner does
/// not depend on the order; the exploration count and policy may.
pub fn solve_with_order(spec: &FiniteGameSpec, order: &[usize]) -> Result<GameValue> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..spec.universe.len()).collect::<Vec<_>>() {
        return Err(Error::Invalid("move order must be a permutation of the universe".into()));
    }
    let mut solver = Solver::new(spec, order.to_vec())?;
    let mut colors = spec.initial.clone();
    let code = encode(&colors);
    let v = solver.value(&mut colors, code);
    let positions_explored = solver.explored;
    let mut seen = vec![false; solver.memo.len()];
    let (winner, policy) = if v == HIDER {
        let mut t = HiderTable::default();
        solver.extract_hider(&mut colors, code, &mut t, &mut seen);
        (Winner::Hider, Policy::Hider(t))
    } else {
        let mut t = SeekerTable::default();
        solver.extract_seeker(&mut colors, code, &mut t, &mut seen);
        (Winner::Seeker, Policy::Seeker(t))
    };
    Ok(GameValue { winner, positions_explored, policy })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub pass: bool,
    /// Complete plays examined.
    pub sequences: usize,
    /// Positions visited, counted once per play prefix.
    pub nodes: usize,
    pub counterexample: Option<Vec<(Pair, Color)>>,
}

/// Callback seeing each position and the moves that led to it.
pub type Visitor<'a> = dyn FnMut(&[Color], &[(usize, Color)]) + 'a;

/// Plays `policy` against every Seeker move sequence. Passes when every
/// terminal position is a Hider win.
pub fn verify_policy(spec: &FiniteGameSpec, policy: &dyn HiderPolicy) -> Verification {
    verify_policy_with(spec, policy, &mut |_, _| {})
}

/// Like [`verify_policy`], calling `visit` at every visited position.
pub fn verify_policy_with(spec: &FiniteGameSpec, policy: &dyn HiderPolicy, visit: &mut Visitor<'_>) -> Verification {
    struct Walk<'a> {
        spec: &'a FiniteGameSpec,
        policy: &'a dyn HiderPolicy,
        visit: &'a mut Visitor<'a>,
        sequences: usize,
        nodes: usize,
        failure: Option<Vec<(usize, Color)>>,
    }
    impl Walk<'_> {
        fn go(&mut self, colors: &mut [Color], history: &mut Vec<(usize, Color)>) {
            if self.failure.is_some() {
                return;
            }
            self.nodes += 1;
            (self.visit)(colors, history);
            if self.spec.is_terminal(colors) {
                self.sequences += 1;
                if !self.spec.hider_wins(colors) {
                    self.failure = Some(history.clone());
                }
                return;
            }
            for e in 0..colors.len() {
                if colors[e] != Color::White {
                    continue;
                }
                let c = match self.policy.reply(colors, history, e) {
                    Color::White => Color::Red,
                    c => c,
                };
                colors[e] = c;
                history.push((e, c));
                self.go(colors, history);
                history.pop();
                colors[e] = Color::White;
            }
        }
    }
    let mut walk = Walk { spec, policy, visit, sequences: 0, nodes: 0, failure: None };
    let mut colors = spec.initial.clone();
    walk.go(&mut colors, &mut Vec::new());
    let counterexample = walk.failure.map(|h| h.into_iter().map(|(e, c)| (spec.universe[e], c)).collect());
    Verification { pass: counterexample.is_none(), sequences: walk.sequences, nodes: walk.nodes, counterexample }
}

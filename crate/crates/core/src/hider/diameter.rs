use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::graph::{all_pairs_within, within_distance_by};
use crate::properties::PropertyId;

use super::{HiderStrategy, MonitorReport, StageState, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    X,
    Y,
    Z(usize),
    W,
    A,
}

#[derive(Debug, Clone)]
struct Stage {
    index: usize,
    start_turn: usize,
    x: Vertex,
    y: Vertex,
    z: Vec<Vertex>,
    w: Vertex,
}

impl Stage {
    fn role(&self, v: Vertex) -> Role {
        if v == self.x {
            Role::X
        } else if v == self.y {
            Role::Y
        } else if v == self.w {
            Role::W
        } else if let Some(j) = self.z.iter().position(|&z| z == v) {
            Role::Z(j)
        } else {
            Role::A
        }
    }

    fn green(&self, a: Role, b: Role) -> bool {
        use Role::*;
        match (a, b) {
            (Y, Z(0)) | (Z(0), Y) | (Z(0), W) | (W, Z(0)) => true,
            (Z(i), Z(j)) => i + 1 == j || j + 1 == i,
            (X, A) | (A, X) | (Y, A) | (A, Y) => true,
            (A | W, A | W) => true,
            _ => false,
        }
    }

    fn policy(&self, e: Pair) -> bool {
        self.green(self.role(e.u()), self.role(e.v()))
    }

    fn span(&self) -> Vertex {
        self.z.iter().chain([&self.x, &self.y, &self.w]).copied().max().unwrap_or(0) + 1
    }
}

/// Minimal-edge strategy for "diameter at most d": the least white edge
/// `xy` and fresh `z0..z_{d-2}, w` fix which edges are green in the stage,
/// so that `x` and `z_{d-2}` stay far apart in green while green-white
/// distances stay short.
pub struct DiameterHider {
    d: usize,
    stage: Option<Stage>,
}

impl DiameterHider {
    pub fn new(d: usize) -> DiameterHider {
        assert!(d >= 2, "d must be at least 2");
        DiameterHider { d, stage: None }
    }

    fn sync(&mut self, board: &Board) -> Result<()> {
        let stale = match &self.stage {
            None => true,
            Some(s) => board.color_of(s.x, s.y) != Color::White,
        };
        if stale {
            let g = board.min_white_edge();
            let (x, y) = (g.u(), g.v());
            let mut fresh = board.fresh_vertices_excluding(self.d, &[x, y])?;
            let w = fresh.pop().expect("d >= 2");
            let index = self.stage.as_ref().map_or(0, |s| s.index + 1);
            self.stage = Some(Stage { index, start_turn: board.turn(), x, y, z: fresh, w });
        }
        Ok(())
    }

    fn far_pair(&self, board: &Board) -> std::result::Result<(), Witness> {
        let Some(s) = &self.stage else { return Ok(()) };
        let target = *s.z.last().expect("d >= 2");
        if within_distance_by(|v| board.green_neighbors(v), s.x, target, self.d) {
            Err(Witness::Vertices(vec![s.x, target]))
        } else {
            Ok(())
        }
    }

    // Green-white distances under the stage policy: green edges, white edges
    // the policy would green, and the guard xy. Vertices beyond the window
    // behave alike, so one extra vertex stands for all of them.
    fn short_paths(&self, board: &Board) -> std::result::Result<(), Witness> {
        let Some(s) = &self.stage else { return Ok(()) };
        let n = board.window().max(s.span());
        let tail = n;
        let size = n as usize + 1;
        let words = size.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; size];
        for b in 0..=n {
            for a in 0..b {
                let e = Pair::new(a, b);
                let c = if b == tail { Color::White } else { board.color(e) };
                let role_b = if b == tail { Role::A } else { s.role(b) };
                let keep = match c {
                    Color::Green => true,
                    Color::Red => false,
                    Color::White => e == Pair::new(s.x, s.y) || s.green(s.role(a), role_b),
                };
                if keep {
                    rows[a as usize][b as usize / 64] |= 1 << (b % 64);
                    rows[b as usize][a as usize / 64] |= 1 << (a % 64);
                }
            }
        }
        all_pairs_within(&rows, self.d).map_err(|(a, b)| {
            let show = |v: Vertex| if v == tail { "beyond-window".to_string() } else { v.to_string() };
            Witness::Note(format!("no green-white path of length <= {} from {} to {}", self.d, show(a), show(b)))
        })
    }
}

impl HiderStrategy for DiameterHider {
    fn id(&self) -> String {
        format!("diameter:{}", self.d)
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::DiameterAtMostD(self.d))
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        self.sync(board)?;
        let s = self.stage.as_ref().expect("stage");
        Ok(if s.policy(e) { Color::Green } else { Color::Red })
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        self.sync(board)
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["green-white-diameter", "x-far-from-z"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push("green-white-diameter", self.short_paths(board));
        r.push("x-far-from-z", self.far_pair(board));
        r
    }

    // The policy graph is fixed for the whole stage, so the distance claim
    // is rechecked only when a stage begins.
    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let fresh_stage = self.stage.as_ref().is_some_and(|s| s.start_turn == board.turn());
        let mut r = MonitorReport::new(board.turn());
        r.push("green-white-diameter", if fresh_stage { self.short_paths(board) } else { Ok(()) });
        let green_move = matches!(board.last_move(), Some((_, Color::Green)));
        r.push("x-far-from-z", if fresh_stage || green_move { self.far_pair(board) } else { Ok(()) });
        r
    }

    fn stage(&self) -> Option<StageState> {
        self.stage.as_ref().map(|s| {
            let mut reserved = s.z.clone();
            reserved.push(s.w);
            StageState { index: s.index, guard: format!("{} colored", Pair::new(s.x, s.y)), reserved }
        })
    }
}

use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::graph::{graph_has_cycle_of_length, path_of_length_exists, Graph};
use crate::properties::{green_graph, PropertyId};

use super::{HiderStrategy, MonitorReport, StageState, Witness};

#[derive(Debug, Clone)]
struct Stage {
    index: usize,
    guard: Pair,
    /// u, u0, ..., u_{k-3}, v
    path: Vec<Vertex>,
}

impl Stage {
    fn on_path(&self, e: Pair) -> bool {
        self.path.windows(2).any(|w| Pair::new(w[0], w[1]) == e)
    }

    fn cycle_edges(&self) -> Vec<Pair> {
        let mut es: Vec<Pair> = self.path.windows(2).map(|w| Pair::new(w[0], w[1])).collect();
        es.push(self.guard);
        es
    }
}

/// Minimal-edge strategy keeping `k`-cycles (or short cycles, for girth)
/// out of the green graph: each stage reserves a path of fresh vertices
/// closing a `k`-cycle with the least white edge, greens only that path and
/// reds the guard edge itself.
pub struct CycleHider {
    k: usize,
    girth: bool,
    stage: Option<Stage>,
}

impl CycleHider {
    pub fn k_cycle(k: usize) -> CycleHider {
        assert!(k >= 3, "k must be at least 3");
        CycleHider { k, girth: false, stage: None }
    }

    pub fn girth(k: usize) -> CycleHider {
        assert!(k >= 3, "k must be at least 3");
        CycleHider { k, girth: true, stage: None }
    }

    fn sync(&mut self, board: &Board) -> Result<()> {
        let stale = match &self.stage {
            None => true,
            Some(s) => board.color(s.guard) != Color::White,
        };
        if stale {
            let guard = board.min_white_edge();
            let (u, v) = (guard.u(), guard.v());
            let reserved = board.fresh_vertices_excluding(self.k - 2, &[u, v])?;
            let mut path = vec![u];
            path.extend(reserved);
            path.push(v);
            let index = self.stage.as_ref().map_or(0, |s| s.index + 1);
            self.stage = Some(Stage { index, guard, path });
        }
        Ok(())
    }

    fn cycle_check_name(&self) -> &'static str {
        if self.girth {
            "no-short-green-cycle"
        } else {
            "no-green-ck"
        }
    }

    fn cycle_full(&self, g: &Graph) -> std::result::Result<(), Witness> {
        let lengths = if self.girth { 3..=self.k } else { self.k..=self.k };
        for len in lengths {
            if graph_has_cycle_of_length(g, len) {
                return Err(Witness::Note(format!("green cycle of length {len}")));
            }
        }
        Ok(())
    }

    // A new green edge ab closes a bad cycle iff a and b were already joined
    // by a green path of the forbidden length(s).
    fn cycle_after(&self, g: &Graph, e: Pair) -> std::result::Result<(), Witness> {
        let (a, b) = (e.u(), e.v());
        let closes = if self.girth {
            (2..self.k).any(|len| path_of_length_exists(g, a, b, len, Some(e)))
        } else {
            path_of_length_exists(g, a, b, self.k - 1, Some(e))
        };
        if closes {
            Err(Witness::Edges(vec![e]))
        } else {
            Ok(())
        }
    }

    fn reserved_check(&self, board: &Board) -> std::result::Result<(), Witness> {
        let Some(s) = &self.stage else { return Ok(()) };
        if board.color(s.guard) != Color::White {
            return Ok(());
        }
        let red: Vec<Pair> = s.cycle_edges().into_iter().filter(|&e| board.color(e) == Color::Red).collect();
        if red.is_empty() {
            Ok(())
        } else {
            Err(Witness::Edges(red))
        }
    }
}

impl HiderStrategy for CycleHider {
    fn id(&self) -> String {
        if self.girth {
            format!("girth:{}", self.k)
        } else {
            format!("k-cycle:{}", self.k)
        }
    }

    fn property(&self) -> Option<PropertyId> {
        Some(if self.girth { PropertyId::GirthAtMostK(self.k) } else { PropertyId::ContainsCycleK(self.k) })
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        self.sync(board)?;
        let s = self.stage.as_ref().expect("stage");
        Ok(if e != s.guard && s.on_path(e) { Color::Green } else { Color::Red })
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        self.sync(board)
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec![self.cycle_check_name(), "reserved-cycle-intact"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push(self.cycle_check_name(), self.cycle_full(&green_graph(board)));
        r.push("reserved-cycle-intact", self.reserved_check(board));
        r
    }

    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let outcome = match board.last_move() {
            Some((e, Color::Green)) => self.cycle_after(&green_graph(board), e),
            _ => Ok(()),
        };
        r.push(self.cycle_check_name(), outcome);
        r.push("reserved-cycle-intact", self.reserved_check(board));
        r
    }

    fn stage(&self) -> Option<StageState> {
        self.stage.as_ref().map(|s| StageState {
            index: s.index,
            guard: format!("{} colored", s.guard),
            reserved: s.path[1..s.path.len() - 1].to_vec(),
        })
    }
}

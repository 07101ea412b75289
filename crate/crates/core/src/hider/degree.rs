use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::properties::PropertyId;

use super::{HiderStrategy, MonitorReport, StageState, Witness};

/// Keeps every green degree below `d`: the stage pivot is the least vertex
/// of green degree below `d - 1`, and Hider greens edges from the pivot to
/// vertices that still have room.
pub struct DegreeHider {
    d: usize,
    pivot: Vertex,
    index: usize,
}

impl DegreeHider {
    pub fn new(d: usize) -> DegreeHider {
        assert!(d >= 1, "d must be at least 1");
        DegreeHider { d, pivot: 0, index: 0 }
    }

    fn has_room(&self, board: &Board, v: Vertex) -> bool {
        board.degree(v, Color::Green) < self.d - 1
    }

    // Green degrees only grow, so the pivot only moves forward.
    fn sync(&mut self, board: &Board) {
        if self.d == 1 {
            return;
        }
        while !self.has_room(board, self.pivot) {
            self.pivot += 1;
            self.index += 1;
        }
    }

    fn degree_at(&self, board: &Board, v: Vertex) -> std::result::Result<(), Witness> {
        if board.degree(v, Color::Green) < self.d {
            Ok(())
        } else {
            Err(Witness::Edges(board.green_neighbors(v).iter().map(|&x| Pair::new(v, x)).collect()))
        }
    }

    fn pivot_check(&self, board: &Board) -> std::result::Result<(), Witness> {
        if self.d == 1 {
            return Ok(());
        }
        match (0..self.pivot).find(|&x| self.has_room(board, x)) {
            Some(x) => Err(Witness::Vertices(vec![x, self.pivot])),
            None if !self.has_room(board, self.pivot) => Err(Witness::Vertices(vec![self.pivot])),
            None => Ok(()),
        }
    }
}

impl HiderStrategy for DegreeHider {
    fn id(&self) -> String {
        format!("degree:{}", self.d)
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::MaxDegreeAtLeastD(self.d))
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        if self.d == 1 {
            return Ok(Color::Red);
        }
        self.sync(board);
        let green = e.other(self.pivot).is_some_and(|a| self.has_room(board, a));
        Ok(if green { Color::Green } else { Color::Red })
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        self.sync(board);
        Ok(())
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["max-green-degree", "pivot-minimal"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push("max-green-degree", (0..board.window()).try_for_each(|v| self.degree_at(board, v)));
        r.push("pivot-minimal", self.pivot_check(board));
        r
    }

    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let outcome = match board.last_move() {
            Some((e, Color::Green)) => self.degree_at(board, e.u()).and_then(|_| self.degree_at(board, e.v())),
            _ => Ok(()),
        };
        r.push("max-green-degree", outcome);
        r.push("pivot-minimal", self.pivot_check(board));
        r
    }

    fn stage(&self) -> Option<StageState> {
        (self.d > 1).then(|| StageState {
            index: self.index,
            guard: format!("green degree of {} reaches {}", self.pivot, self.d - 1),
            reserved: vec![self.pivot],
        })
    }
}

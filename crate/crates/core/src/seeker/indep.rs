use std::collections::VecDeque;

use crate::board::{Board, Color, EdgeIndex, Pair, Vertex};
use crate::error::Result;
use crate::hider::{MonitorReport, Witness};
use crate::matching::{max_matching, max_matching_size};
use crate::properties::{classify_edge, green_support, EdgeClass};

use super::{scan, ForcingVerdict, SeekerStrategy};

#[derive(Debug, Clone)]
enum Step {
    /// x has no white edge into the support: hold a white edge at y back and
    /// play everything else until Hider extends the support.
    HoldAtY { kept: Pair, cursor: EdgeIndex },
    /// Color the white edges inside the support minus x.
    Inside { queue: VecDeque<Pair> },
    /// Play the relevant edges from x into the support; each must go red.
    Relevant { queue: VecDeque<Pair> },
    /// Play edges leaving the support until Hider greens one.
    Outside { cursor: EdgeIndex },
}

#[derive(Debug, Clone)]
struct Round {
    x: Vertex,
    y: Vertex,
    support: Vec<Vertex>,
    step: Step,
}

impl Round {
    fn in_support(&self, v: Vertex) -> bool {
        self.support.binary_search(&v).is_ok()
    }

    fn white_from_x(&self, board: &Board) -> Vec<Pair> {
        self.support
            .iter()
            .filter(|&&a| a != self.x && a != self.y)
            .map(|&a| Pair::new(self.x, a))
            .filter(|&e| board.is_white(e))
            .collect()
    }
}

#[derive(Debug, Clone)]
enum Mode {
    /// Everything except the withheld edge until the first green reply.
    Opening {
        cursor: EdgeIndex,
    },
    Round(Round),
    /// Keep one edge white forever.
    Trap {
        kept: Pair,
        cursor: EdgeIndex,
    },
}

/// Forces Hider to keep adding green edges while every green degree stays
/// below `2k - 1`; past `4k^2` green edges `k` of them must be independent.
pub struct IndependentEdgesSeeker {
    k: usize,
    withheld: Pair,
    mode: Mode,
    verdict: ForcingVerdict,
    round_starts: Vec<usize>,
}

fn least_white_at(board: &Board, v: Vertex) -> Pair {
    (0..).filter(|&b| b != v).map(|b| Pair::new(v, b)).find(|&e| board.is_white(e)).expect("infinitely many edges")
}

impl IndependentEdgesSeeker {
    pub fn new(k: usize) -> IndependentEdgesSeeker {
        assert!(k >= 2, "k must be at least 2");
        IndependentEdgesSeeker {
            k,
            withheld: Pair::new(0, 2),
            mode: Mode::Opening { cursor: 0 },
            verdict: ForcingVerdict::OnTrack,
            round_starts: Vec::new(),
        }
    }

    /// Green edge counts at the start of each extension round.
    pub fn round_starts(&self) -> &[usize] {
        &self.round_starts
    }

    fn refute(&mut self, witness: Witness) {
        if !self.verdict.is_refuted() {
            self.verdict = ForcingVerdict::Refuted { witness };
        }
    }

    fn enter_trap(&mut self, trap: &str, witness: Witness, kept: Pair) {
        self.verdict = ForcingVerdict::trap(trap, witness);
        self.mode = Mode::Trap { kept, cursor: 0 };
    }

    fn start_round(&mut self, board: &Board) {
        let support = green_support(board);
        let Some(&x) = support.iter().find(|&&v| board.degree(v, Color::Green) == 1) else {
            self.refute(Witness::Note("no vertex of green degree 1 after an extension".into()));
            return;
        };
        let y = board.green_neighbors(x)[0];
        let g = board.green_count();
        if self.round_starts.last().is_some_and(|&prev| prev >= g) {
            self.refute(Witness::Note(format!("green count {g} did not grow")));
        }
        self.round_starts.push(g);
        let mut round = Round { x, y, support, step: Step::Outside { cursor: 0 } };
        round.step = if round.white_from_x(board).is_empty() {
            Step::HoldAtY { kept: least_white_at(board, y), cursor: 0 }
        } else {
            let rest: Vec<Vertex> = round.support.iter().copied().filter(|&a| a != x).collect();
            let mut queue = VecDeque::new();
            for (i, &a) in rest.iter().enumerate() {
                for &b in &rest[i + 1..] {
                    if board.color_of(a, b) == Color::White {
                        queue.push_back(Pair::new(a, b));
                    }
                }
            }
            let mut q: Vec<Pair> = queue.into_iter().collect();
            q.sort_by_key(|e| e.index());
            Step::Inside { queue: q.into() }
        };
        self.mode = Mode::Round(round);
    }

    // Called when the relevant edges from x are exhausted.
    fn after_relevant(&mut self, board: &Board) {
        let Mode::Round(round) = &mut self.mode else { return };
        let rest = round.white_from_x(board);
        if rest.is_empty() {
            round.step = Step::HoldAtY { kept: least_white_at(board, round.y), cursor: 0 };
            return;
        }
        let mut edges: Vec<Pair> = board.green_edges().collect();
        edges.extend(rest.iter().copied());
        round.step = Step::Outside { cursor: 0 };
        if max_matching_size(&edges) >= self.k {
            self.refute(Witness::Edges(rest));
        }
    }
}

impl SeekerStrategy for IndependentEdgesSeeker {
    fn id(&self) -> String {
        format!("indep:{}", self.k)
    }

    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        loop {
            let withheld = self.withheld;
            let k = self.k;
            match &mut self.mode {
                Mode::Opening { cursor } => return Ok(Some(scan(board, cursor, |e| e != withheld))),
                Mode::Trap { kept, cursor } => {
                    let kept = *kept;
                    return Ok(Some(scan(board, cursor, |e| e != kept)));
                }
                Mode::Round(round) => match &mut round.step {
                    Step::HoldAtY { kept, cursor } => {
                        let kept = *kept;
                        return Ok(Some(scan(board, cursor, |e| e != kept)));
                    }
                    Step::Inside { queue } => {
                        if let Some(e) = queue.pop_front() {
                            if board.is_white(e) {
                                return Ok(Some(e));
                            }
                            continue;
                        }
                        let queue = round.white_from_x(board).into();
                        round.step = Step::Relevant { queue };
                    }
                    Step::Relevant { queue } => {
                        if let Some(e) = queue.pop_front() {
                            if board.is_white(e) && classify_edge(board, e, k) == EdgeClass::Relevant {
                                return Ok(Some(e));
                            }
                            continue;
                        }
                        self.after_relevant(board);
                    }
                    Step::Outside { cursor } => {
                        let mut c = *cursor;
                        let e = scan(board, &mut c, |e| !round.in_support(e.u()) || !round.in_support(e.v()));
                        round.step = Step::Outside { cursor: c };
                        return Ok(Some(e));
                    }
                },
            }
        }
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        if matches!(self.mode, Mode::Trap { .. }) {
            return Ok(());
        }
        let Some((e, c)) = board.last_move() else { return Ok(()) };
        if c != Color::Green {
            return Ok(());
        }
        let green: Vec<Pair> = board.green_edges().collect();
        if max_matching_size(&green) >= self.k {
            let kept = board.min_white_edge();
            self.enter_trap("decided", Witness::Edges(max_matching(&green)), kept);
            return Ok(());
        }
        if let Some(&v) = e.ends().iter().find(|&&v| board.degree(v, Color::Green) >= 2 * self.k - 1) {
            let star = board.green_neighbors(v).iter().map(|&w| Pair::new(v, w)).collect();
            let kept = least_white_at(board, v);
            self.enter_trap("degree", Witness::Edges(star), kept);
            return Ok(());
        }
        let extends = match &self.mode {
            Mode::Opening { .. } => true,
            Mode::Round(r) => !r.in_support(e.u()) || !r.in_support(e.v()),
            Mode::Trap { .. } => false,
        };
        if extends {
            self.start_round(board);
        }
        Ok(())
    }

    fn verdict(&self) -> ForcingVerdict {
        self.verdict.clone()
    }

    fn conclude(&mut self, _board: &Board) -> ForcingVerdict {
        if matches!(self.mode, Mode::Opening { .. }) && self.verdict == ForcingVerdict::OnTrack {
            return ForcingVerdict::trap("all-red", Witness::Edges(vec![self.withheld]));
        }
        self.verdict.clone()
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let on_track = self.verdict == ForcingVerdict::OnTrack;
        let cap = 2 * self.k - 2;
        let over = (0..board.window()).find(|&v| board.degree(v, Color::Green) > cap);
        r.push(
            "degree-cap",
            match over {
                Some(v) if on_track => Err(Witness::Vertices(vec![v])),
                _ => Ok(()),
            },
        );
        let growing = self.round_starts.windows(2).all(|w| w[0] < w[1]);
        r.push("green-growth", if growing { Ok(()) } else { Err(Witness::Note(format!("{:?}", self.round_starts))) });
        let green: Vec<Pair> = board.green_edges().collect();
        let certified = green.len() < 4 * self.k * self.k || max_matching_size(&green) >= self.k;
        r.push("matching-certificate", if certified { Ok(()) } else { Err(Witness::Edges(green)) });
        r
    }
}

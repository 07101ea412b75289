use crate::board::{Board, Color, EdgeIndex, Pair, Vertex};
use crate::error::Result;
use crate::hider::{stranded, MonitorReport, Witness};
use crate::properties::green_support;

use super::{scan, ForcingVerdict, SeekerStrategy};

#[derive(Debug, Clone)]
enum Phase {
    /// Edges x0-j for j = 1, 2, ... until the first green reply.
    Opening { j: Vertex },
    /// Edge x_i x_j, j running from i+1 to m.
    Sweep { i: usize, j: usize },
    /// `at = 0` is yz, `at = 1 + i` is y x_i.
    YEdges { at: usize },
    /// Edge x_{t+1} x_j, j running down from t to 0.
    Extend { j: usize },
    /// Edge y x_t.
    Close,
    /// Everything except `kept`.
    KeepWhite { kept: Pair, cursor: EdgeIndex },
    /// Edges from `x` to vertices outside the green support at trap time.
    Strand { x: Vertex, support: Vec<Vertex>, next: Vertex },
}

/// Strategy for "no isolated vertex": grows a green star around a hub while
/// every edge at a reserved vertex y goes red and a second reserved vertex
/// z is never touched.
pub struct NoIsolatedSeeker {
    phase: Phase,
    /// x_0, x_1, ...; after the sweeps x_0 is the hub.
    xs: Vec<Vertex>,
    m: usize,
    t: usize,
    y: Option<Vertex>,
    z: Option<Vertex>,
    hub: Option<Vertex>,
    verdict: ForcingVerdict,
}

impl Default for NoIsolatedSeeker {
    fn default() -> Self {
        NoIsolatedSeeker::new()
    }
}

impl NoIsolatedSeeker {
    pub fn new() -> NoIsolatedSeeker {
        NoIsolatedSeeker {
            phase: Phase::Opening { j: 1 },
            xs: vec![0],
            m: 0,
            t: 0,
            y: None,
            z: None,
            hub: None,
            verdict: ForcingVerdict::OnTrack,
        }
    }

    /// The two reserved vertices, once chosen.
    pub fn reserved(&self) -> Option<(Vertex, Vertex)> {
        self.y.zip(self.z)
    }

    // The move the current phase plays, with the reply it forces.
    fn planned(&self) -> Option<(Pair, Option<Color>)> {
        let x = |i: usize| self.xs[i];
        match &self.phase {
            Phase::Opening { j } => Some((Pair::new(self.xs[0], *j), None)),
            Phase::Sweep { i, j } => {
                let forced = if *j == self.m { Color::Green } else { Color::Red };
                Some((Pair::new(x(*i), x(*j)), Some(forced)))
            }
            Phase::YEdges { at } => {
                let y = self.y?;
                let other = if *at == 0 { self.z? } else { x(at - 1) };
                Some((Pair::new(y, other), Some(Color::Red)))
            }
            Phase::Extend { j } => {
                let forced = if *j == 0 { Color::Green } else { Color::Red };
                Some((Pair::new(x(self.t + 1), x(*j)), Some(forced)))
            }
            Phase::Close => Some((Pair::new(self.y?, x(self.t)), Some(Color::Red))),
            Phase::KeepWhite { .. } | Phase::Strand { .. } => None,
        }
    }

    fn fresh_label(&self, board: &Board) -> Vertex {
        let taken = |v: Vertex| self.xs.contains(&v) || Some(v) == self.y || Some(v) == self.z;
        (0..).find(|&v| !taken(v) && !board.is_touched(v)).expect("unbounded vertex supply")
    }

    fn advance(&mut self, board: &Board) {
        self.phase = match self.phase.clone() {
            Phase::Opening { .. } => unreachable!("handled in observe"),
            Phase::Sweep { i, j } => {
                if j < self.m {
                    Phase::Sweep { i, j: j + 1 }
                } else if i + 1 < self.m {
                    Phase::Sweep { i: i + 1, j: i + 2 }
                } else {
                    self.finish_sweeps(board)
                }
            }
            Phase::YEdges { at } => {
                if at < self.m {
                    Phase::YEdges { at: at + 1 }
                } else {
                    self.t = self.m;
                    self.start_extend(board)
                }
            }
            Phase::Extend { j } => {
                if j > 0 {
                    Phase::Extend { j: j - 1 }
                } else {
                    Phase::Close
                }
            }
            Phase::Close => {
                self.t += 1;
                self.start_extend(board)
            }
            p => p,
        };
    }

    fn finish_sweeps(&mut self, board: &Board) -> Phase {
        self.xs.swap(0, self.m);
        let fresh = board.fresh_vertices_excluding(2, &self.xs).expect("fresh vertices");
        self.y = Some(fresh[0]);
        self.z = Some(fresh[1]);
        Phase::YEdges { at: 0 }
    }

    fn start_extend(&mut self, board: &Board) -> Phase {
        if self.xs.len() == self.t + 1 {
            let v = self.fresh_label(board);
            self.xs.push(v);
        }
        Phase::Extend { j: self.t }
    }

    fn observation(&mut self, board: &Board, e: Pair) {
        let exposed = e.ends().iter().find_map(|&v| {
            (0..board.window())
                .filter(|&c| c != v && board.is_covered(c))
                .map(|c| Pair::new(v, c))
                .find(|&w| board.is_white(w))
        });
        match exposed {
            Some(w) => {
                self.verdict = ForcingVerdict::trap("observation", Witness::Edges(vec![w]));
                self.phase = Phase::KeepWhite { kept: w, cursor: 0 };
            }
            None => self.verdict = ForcingVerdict::Refuted { witness: Witness::Edges(vec![e]) },
        }
    }

    fn claim(&mut self, board: &Board, x: Vertex) {
        if stranded(board, x) {
            self.verdict = ForcingVerdict::trap("claim", Witness::Vertices(vec![x]));
            self.phase = Phase::Strand { x, support: green_support(board), next: 0 };
        } else {
            self.verdict = ForcingVerdict::Refuted { witness: Witness::Vertices(vec![x]) };
        }
    }
}

impl SeekerStrategy for NoIsolatedSeeker {
    fn id(&self) -> String {
        "no-isolated".into()
    }

    fn next(&mut self, board: &Board) -> Result<Option<Pair>> {
        match &mut self.phase {
            Phase::KeepWhite { kept, cursor } => {
                let kept = *kept;
                return Ok(Some(scan(board, cursor, |e| e != kept)));
            }
            Phase::Strand { x, support, next } => {
                let x = *x;
                loop {
                    let v = *next;
                    *next += 1;
                    if v != x && support.binary_search(&v).is_err() && board.color_of(x, v) == Color::White {
                        return Ok(Some(Pair::new(x, v)));
                    }
                }
            }
            _ => {}
        }
        if self.verdict.is_refuted() {
            return Ok(Some(board.min_white_edge()));
        }
        let (e, _) = self.planned().expect("forcing phase");
        Ok(Some(e))
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        if self.verdict != ForcingVerdict::OnTrack {
            return Ok(());
        }
        let Some((e, c)) = board.last_move() else { return Ok(()) };
        let Some((planned, forced)) = self.planned() else { return Ok(()) };
        if planned != e {
            return Ok(());
        }
        if let Phase::Opening { j } = self.phase {
            if c == Color::Green {
                self.m = j as usize;
                self.xs = (0..=j).collect();
                self.hub = Some(j);
                self.phase = if self.m > 1 { Phase::Sweep { i: 1, j: 2 } } else { self.finish_sweeps(board) };
            } else {
                self.phase = Phase::Opening { j: j + 1 };
            }
            return Ok(());
        }
        match (forced, c) {
            (Some(Color::Red), Color::Green) => self.observation(board, e),
            (Some(Color::Green), Color::Red) => {
                let x = match self.phase {
                    Phase::Sweep { i, .. } => self.xs[i],
                    _ => self.xs[self.t + 1],
                };
                self.claim(board, x);
            }
            _ => self.advance(board),
        }
        Ok(())
    }

    fn verdict(&self) -> ForcingVerdict {
        self.verdict.clone()
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let on_track = self.verdict == ForcingVerdict::OnTrack;
        // yz itself is played once, right after the reservation.
        let z_ok = match self.y.zip(self.z) {
            Some((y, z)) if on_track => {
                let stray: Vec<Pair> = board
                    .green_neighbors(z)
                    .iter()
                    .chain(board.red_neighbors(z))
                    .filter(|&&v| v != y)
                    .map(|&v| Pair::new(z, v))
                    .collect();
                if stray.is_empty() {
                    Ok(())
                } else {
                    Err(Witness::Edges(stray))
                }
            }
            _ => Ok(()),
        };
        r.push("z-untouched", z_ok);
        let star_ok = match self.hub {
            Some(h) if on_track => match board.green_edges().find(|e| !e.contains(h)) {
                Some(e) => Err(Witness::Edges(vec![e])),
                None => Ok(()),
            },
            _ => Ok(()),
        };
        r.push("green-star", star_ok);
        let y_ok = match self.y {
            Some(y) if on_track && board.degree(y, Color::Green) > 0 => {
                Err(Witness::Edges(board.green_neighbors(y).iter().map(|&v| Pair::new(y, v)).collect()))
            }
            _ => Ok(()),
        };
        r.push("y-edges-red", y_ok);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hider::{CautiousIsolationHider, HiderStrategy, RandomHider};

    fn step(s: &mut NoIsolatedSeeker, b: &mut Board, c: Color) -> Pair {
        let e = s.next(b).unwrap().unwrap();
        b.play(e, c).unwrap();
        s.observe(b).unwrap();
        e
    }

    #[test]
    fn opening_and_sweeps_follow_the_labels() {
        let mut s = NoIsolatedSeeker::new();
        let mut b = Board::new();
        assert_eq!(step(&mut s, &mut b, Color::Red), Pair::new(0, 1));
        assert_eq!(step(&mut s, &mut b, Color::Red), Pair::new(0, 2));
        assert_eq!(step(&mut s, &mut b, Color::Red), Pair::new(0, 3));
        assert_eq!(step(&mut s, &mut b, Color::Green), Pair::new(0, 4));
        // m = 4: x1x2, x1x3, x1x4 then x2x3, x2x4, then x3x4
        let expect = [
            (1, 2, Color::Red),
            (1, 3, Color::Red),
            (1, 4, Color::Green),
            (2, 3, Color::Red),
            (2, 4, Color::Green),
            (3, 4, Color::Green),
        ];
        for (a, c, col) in expect {
            assert_eq!(step(&mut s, &mut b, col), Pair::new(a, c));
        }
        assert_eq!(s.verdict(), ForcingVerdict::OnTrack);
        // hub is 4 now; y, z are 5, 6; yz then y x0 .. y x3
        assert_eq!(s.reserved(), Some((5, 6)));
        let expect = [(5, 6), (4, 5), (1, 5), (2, 5), (3, 5)];
        for (a, c) in expect {
            assert_eq!(step(&mut s, &mut b, Color::Red), Pair::new(a, c));
        }
        // x5 = 7: 7-0, 7-3, 7-2, 7-1 red, then 7-4 green, then y-0 red
        let expect = [
            (0, 7, Color::Red),
            (3, 7, Color::Red),
            (2, 7, Color::Red),
            (1, 7, Color::Red),
            (4, 7, Color::Green),
            (0, 5, Color::Red),
        ];
        for (a, c, col) in expect {
            assert_eq!(step(&mut s, &mut b, col), Pair::new(a, c));
        }
        assert_eq!(s.verdict(), ForcingVerdict::OnTrack);
        assert!(s.monitor(&b).all_pass());
    }

    #[test]
    fn early_green_is_an_observation_trap() {
        let mut s = NoIsolatedSeeker::new();
        let mut b = Board::new();
        step(&mut s, &mut b, Color::Red);
        step(&mut s, &mut b, Color::Red);
        step(&mut s, &mut b, Color::Green); // m = 3
        step(&mut s, &mut b, Color::Green); // x1x2 green, x1x3 still white
        assert_eq!(s.verdict(), ForcingVerdict::trap("observation", Witness::Edges(vec![Pair::new(1, 3)])));
        for _ in 0..30 {
            assert_ne!(step(&mut s, &mut b, Color::Red), Pair::new(1, 3));
        }
    }

    #[test]
    fn red_on_the_forced_green_is_a_claim_trap() {
        let mut s = NoIsolatedSeeker::new();
        let mut b = Board::new();
        step(&mut s, &mut b, Color::Red);
        step(&mut s, &mut b, Color::Green); // m = 2
        step(&mut s, &mut b, Color::Red); // x1x2 should have been green
        assert_eq!(s.verdict(), ForcingVerdict::trap("claim", Witness::Vertices(vec![1])));
        assert_eq!(step(&mut s, &mut b, Color::Red), Pair::new(1, 3));
    }

    #[test]
    fn compliant_and_random_hiders() {
        for seed in 0..20 {
            let mut s = NoIsolatedSeeker::new();
            let mut h = CautiousIsolationHider::new(seed, 4);
            let mut b = Board::new();
            for _ in 0..600 {
                let e = s.next(&b).unwrap().unwrap();
                let c = h.respond(&b, e).unwrap();
                b.play(e, c).unwrap();
                s.observe(&b).unwrap();
                assert!(s.monitor(&b).all_pass());
            }
            assert_eq!(s.verdict(), ForcingVerdict::OnTrack, "seed {seed}");
            let (y, z) = s.reserved().unwrap();
            assert_eq!(b.red_neighbors(z), &[y]);
            assert!(b.degree(y, Color::Red) > 10);
        }
        for seed in 0..50 {
            let mut s = NoIsolatedSeeker::new();
            let mut h = RandomHider::new(seed);
            let mut b = Board::new();
            for _ in 0..300 {
                let e = s.next(&b).unwrap().unwrap();
                assert!(b.is_white(e));
                let c = h.respond(&b, e).unwrap();
                b.play(e, c).unwrap();
                s.observe(&b).unwrap();
            }
            assert!(!s.verdict().is_refuted(), "seed {seed}");
        }
    }
}

use std::collections::VecDeque;

use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::properties::PropertyId;

use super::{HiderStrategy, MonitorReport, Witness};

/// `reach[j]` for `j < n`: some increasing green-white path runs from 0 to `j`.
/// Scanning predecessors in increasing order usually stops at the first one,
/// so the cost is close to `n` plus the number of red edges inspected.
pub fn good_path_reach(board: &Board, n: Vertex) -> Vec<bool> {
    let mut reach = vec![false; n as usize];
    if n == 0 {
        return reach;
    }
    reach[0] = true;
    for j in 1..n {
        reach[j as usize] = (0..j).any(|i| reach[i as usize] && board.color_of(i, j) != Color::Red);
    }
    reach
}

/// Greens `nk` (n < k) exactly when a red answer would leave no increasing
/// green-white path from 0 to k.
#[derive(Debug, Default)]
pub struct ConnectedHider;

impl ConnectedHider {
    pub fn new() -> ConnectedHider {
        ConnectedHider
    }

    fn good_paths(board: &Board) -> std::result::Result<(), Witness> {
        let reach = good_path_reach(board, board.window());
        match reach.iter().position(|&r| !r) {
            None => Ok(()),
            Some(m) => Err(Witness::Vertices(vec![m as Vertex])),
        }
    }

    fn down_degree_at(board: &Board, k: Vertex) -> std::result::Result<(), Witness> {
        let down: Vec<Vertex> = board.green_neighbors(k).iter().copied().filter(|&x| x < k).collect();
        if down.len() <= 1 {
            Ok(())
        } else {
            Err(Witness::Edges(down.iter().map(|&x| Pair::new(x, k)).collect()))
        }
    }

    // Green component of `start`, never crossing `skip`.
    fn component(board: &Board, start: Vertex, skip: Option<Pair>) -> Vec<Vertex> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(start);
        let mut q = VecDeque::from([start]);
        let mut out = vec![start];
        while let Some(x) = q.pop_front() {
            for &y in board.green_neighbors(x) {
                if Some(Pair::new(x, y)) == skip || !seen.insert(y) {
                    continue;
                }
                out.push(y);
                q.push_back(y);
            }
        }
        out
    }

    fn white_between(board: &Board, xs: &[Vertex], ys: &[Vertex]) -> std::result::Result<(), Witness> {
        for &a in xs {
            for &b in ys {
                if a != b && board.color_of(a, b) == Color::White {
                    return Err(Witness::Edges(vec![Pair::new(a, b)]));
                }
            }
        }
        Ok(())
    }

    fn no_white_in_components(board: &Board) -> std::result::Result<(), Witness> {
        let mut done = vec![false; board.window() as usize];
        for v in 0..board.window() {
            if done[v as usize] || !board.is_covered(v) {
                continue;
            }
            let comp = Self::component(board, v, None);
            for &x in &comp {
                done[x as usize] = true;
            }
            Self::white_between(board, &comp, &comp)?;
        }
        Ok(())
    }
}

impl HiderStrategy for ConnectedHider {
    fn id(&self) -> String {
        "connected".into()
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::Connected)
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        let (n, k) = (e.u(), e.v());
        let reach = good_path_reach(board, k);
        let survives = (0..k).any(|i| i != n && reach[i as usize] && board.color_of(i, k) != Color::Red);
        Ok(if survives { Color::Red } else { Color::Green })
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["good-paths", "green-down-degree", "no-white-in-component"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push("good-paths", Self::good_paths(board));
        let down = (0..board.window()).try_for_each(|k| Self::down_degree_at(board, k));
        r.push("green-down-degree", down);
        r.push("no-white-in-component", Self::no_white_in_components(board));
        r
    }

    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push("good-paths", Self::good_paths(board));
        match board.last_move() {
            Some((e, Color::Green)) => {
                r.push("green-down-degree", Self::down_degree_at(board, e.v()));
                // Only a green edge can join two components; with the forest
                // shape, cutting it recovers the two sides.
                let a = Self::component(board, e.u(), Some(e));
                let outcome = if a.contains(&e.v()) {
                    Err(Witness::Edges(vec![e]))
                } else {
                    let b = Self::component(board, e.v(), Some(e));
                    Self::white_between(board, &a, &b)
                };
                r.push("no-white-in-component", outcome);
            }
            _ => {
                r.push("green-down-degree", Ok(()));
                r.push("no-white-in-component", Ok(()));
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let mut h = ConnectedHider::new();
        let mut b = Board::new();
        assert_eq!(h.respond(&b, Pair::new(0, 1)).unwrap(), Color::Green);
        b.play(Pair::new(0, 1), Color::Green).unwrap();
        assert_eq!(h.respond(&b, Pair::new(0, 2)).unwrap(), Color::Red);
        b.play(Pair::new(0, 2), Color::Red).unwrap();
        assert_eq!(h.respond(&b, Pair::new(1, 2)).unwrap(), Color::Green);
        b.play(Pair::new(1, 2), Color::Green).unwrap();
        assert!(h.monitor(&b).all_pass());
        assert!(h.monitor_move(&b).all_pass());
    }

    #[test]
    fn monitor_flags_broken_claims() {
        let h = ConnectedHider::new();
        let mut b = Board::new();
        b.play(Pair::new(0, 1), Color::Red).unwrap();
        let r = h.monitor(&b);
        assert_eq!(r.checks[0].witness, Some(Witness::Vertices(vec![1])));

        let mut b = Board::new();
        b.play(Pair::new(0, 2), Color::Green).unwrap();
        b.play(Pair::new(1, 2), Color::Green).unwrap();
        let r = h.monitor_move(&b);
        assert!(!r.checks[1].pass);
        // 0 and 1 are green-connected with {0,1} still white
        assert!(!r.checks[2].pass);
        assert!(!h.monitor(&b).checks[2].pass);
    }
}

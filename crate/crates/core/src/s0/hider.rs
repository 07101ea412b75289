use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{Board, Color, Pair};
use crate::error::{Error, Result};
use crate::hider::{HiderStrategy, MonitorReport, Witness};
use crate::properties::PropertyId;

use super::{parity_coloring, template_edge, BitString, Role};

/// Template replies on determined edges; `x_i a` follows a bit string `g`
/// and edges inside `Q` go red until Seeker plays the last white edge of
/// one half `Q_k`. That edge goes green, and from then on `x_i a` follows a
/// string `h` of parity `1 - k` agreeing with every `x_i a` already played.
///
/// Coordinate `horizon - 1` is held back as slack so `h` always exists:
/// before the switch, querying `x_i a` for `i >= horizon - 1` is an error.
pub struct S0Hider {
    g: Vec<bool>,
    horizon: usize,
    trigger: Option<(usize, u8)>,
    h: Option<Vec<bool>>,
}

impl S0Hider {
    pub fn new(g: &BitString) -> Result<S0Hider> {
        if g.len() < 2 {
            return Err(Error::Invalid("horizon must leave one slack coordinate".into()));
        }
        Ok(S0Hider { g: g.bits().to_vec(), horizon: g.len(), trigger: None, h: None })
    }

    /// Random `g` of length `horizon`.
    pub fn seeded(seed: u64, horizon: usize) -> Result<S0Hider> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        S0Hider::new(&BitString::new((0..horizon).map(|_| rng.gen_bool(0.5)).collect())?)
    }

    /// The history index of the green `Q` edge and the half it closed.
    pub fn trigger(&self) -> Option<(usize, u8)> {
        self.trigger
    }

    pub fn h(&self) -> Option<&[bool]> {
        self.h.as_deref()
    }

    fn pick_h(&self, board: &Board, k: u8) -> Result<Vec<bool>> {
        let mut h = self.g.clone();
        let mut free = vec![true; self.horizon];
        for i in 0..self.horizon {
            let e = Pair::new(Role::A.vertex(), Role::X(i as u32).vertex());
            match board.color(e) {
                Color::Green => h[i] = true,
                Color::Red => h[i] = false,
                Color::White => continue,
            }
            free[i] = false;
        }
        if parity_coloring(&h) != 1 - k {
            let slack =
                (0..self.horizon).rev().find(|&i| free[i]).ok_or(Error::HorizonExhausted(self.horizon as u64))?;
            h[slack] = !h[slack];
        }
        Ok(h)
    }

    fn expected(&self, e: Pair, turn: usize) -> Option<Color> {
        let (u, v) = (Role::of(e.u()), Role::of(e.v()));
        if let Some(c) = template_edge(u, v) {
            return Some(c);
        }
        match (u.min(v), u.max(v)) {
            (Role::A, Role::X(i)) => {
                let bits = match (self.trigger, &self.h) {
                    (Some((t, _)), Some(h)) if turn > t => h,
                    _ => &self.g,
                };
                bits.get(i as usize).map(|&b| if b { Color::Green } else { Color::Red })
            }
            _ => match self.trigger {
                Some((t, _)) if turn == t => Some(Color::Green),
                _ => Some(Color::Red),
            },
        }
    }
}

impl HiderStrategy for S0Hider {
    fn id(&self) -> String {
        format!("s0:{}", BitString::new(self.g.clone()).map(|b| b.to_string()).unwrap_or_default())
    }

    fn property(&self) -> Option<PropertyId> {
        None
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        let (u, v) = (Role::of(e.u()), Role::of(e.v()));
        if let Some(c) = template_edge(u, v) {
            return Ok(c);
        }
        if let (Role::A, Role::X(i)) = (u.min(v), u.max(v)) {
            let i = i as usize;
            return match &self.h {
                Some(h) if i < self.horizon => Ok(if h[i] { Color::Green } else { Color::Red }),
                None if i + 1 < self.horizon => Ok(if self.g[i] { Color::Green } else { Color::Red }),
                _ => Err(Error::HorizonExhausted(i as u64)),
            };
        }
        // inside one half of Q
        if self.trigger.is_some() {
            return Ok(Color::Red);
        }
        let k = u.q_half().expect("free edges inside Q");
        let half: Vec<u32> = (0..3).map(|j| Role::Q(3 * k + j).vertex()).collect();
        let last = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| Pair::new(half[i], half[j]))
            .all(|p| p == e || !board.is_white(p));
        if !last {
            return Ok(Color::Red);
        }
        self.h = Some(self.pick_h(board, k)?);
        self.trigger = Some((board.history().len(), k));
        Ok(Color::Green)
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["s0-replies", "h-parity"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let bad: Vec<Pair> = board
            .history()
            .iter()
            .enumerate()
            .filter(|&(t, &(e, c))| self.expected(e, t).is_some_and(|x| x != c))
            .map(|(_, &(e, _))| e)
            .collect();
        r.push("s0-replies", if bad.is_empty() { Ok(()) } else { Err(Witness::Edges(bad)) });
        let parity = match (self.trigger, &self.h) {
            (Some((_, k)), Some(h)) if parity_coloring(h) != 1 - k => {
                Err(Witness::Note(format!("h has parity {} after half {k} closed", parity_coloring(h))))
            }
            _ => Ok(()),
        };
        r.push("h-parity", parity);
        r
    }
}

//! Game positions: a partial green/red coloring of the edges of the complete
//! graph on ℕ, stored over a finite window of initial vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type EdgeIndex = u64;

/// Default upper bound on the vertex window.
pub const DEFAULT_WINDOW_CAP: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    u: Vertex,
    v: Vertex,
}

impl Pair {
    /// Builds the canonical pair. Panics when `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Pair {
        Pair::try_new(a, b).expect("a pair needs two distinct vertices")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Pair> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Pair { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Pair { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn ends(self) -> [Vertex; 2] {
        [self.u, self.v]
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint other than `x`, if `x` is an endpoint.
    pub fn other(self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn index(self) -> EdgeIndex {
        canonical_index(self)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        Pair::try_new(a, b).ok_or_else(|| serde::de::Error::custom("pair endpoints coincide"))
    }
}

/// Index of `{u,v}` (u < v) in the (max,min)-lexicographic enumeration.
pub fn canonical_index(p: Pair) -> EdgeIndex {
    let v = p.v as u64;
    v * (v - 1) / 2 + p.u as u64
}

pub fn pair_of(i: EdgeIndex) -> Pair {
    // Largest v with v(v-1)/2 <= i.
    let mut v = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > i {
        v -= 1;
    }
    while (v + 1) * v / 2 <= i {
        v += 1;
    }
    let u = i - v * (v - 1) / 2;
    Pair { u: u as Vertex, v: v as Vertex }
}

/// Number of pairs among the first `n` vertices.
pub fn pairs_below(n: u32) -> usize {
    let n = n as usize;
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Green => Color::Red,
            Color::Red => Color::Green,
            Color::White => Color::White,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Green => "green",
            Color::Red => "red",
            Color::White => "white",
        })
    }
}

/// A position of the game.
///
/// Edges touching a vertex at or beyond `window` are white. The window grows
/// when a move touches a new vertex, and never past `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    window: u32,
    cap: u32,
    colors: Vec<Color>,
    green_adj: Vec<Vec<Vertex>>,
    red_adj: Vec<Vec<Vertex>>,
    history: Vec<(Pair, Color)>,
    green_count: usize,
    min_white: EdgeIndex,
}

impl Default for Board {
    fn default() -> Self {
        Board::new()
    }
}

impl Board {
    pub fn new() -> Board {
        Board::with_cap(DEFAULT_WINDOW_CAP)
    }

    pub fn with_cap(cap: u32) -> Board {
        Board {
            window: 0,
            cap,
            colors: Vec::new(),
            green_adj: Vec::new(),
            red_adj: Vec::new(),
            history: Vec::new(),
            green_count: 0,
            min_white: 0,
        }
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn turn(&self) -> usize {
        self.history.len()
    }

    pub fn history(&self) -> &[(Pair, Color)] {
        &self.history
    }

    pub fn last_move(&self) -> Option<(Pair, Color)> {
        self.history.last().copied()
    }

    pub fn green_count(&self) -> usize {
        self.green_count
    }

    pub fn red_count(&self) -> usize {
        self.history.len() - self.green_count
    }

    /// Grows the window so that it contains `v`.
    pub fn ensure_vertex(&mut self, v: Vertex) -> Result<()> {
        if v < self.window {
            return Ok(());
        }
        if v >= self.cap {
            return Err(Error::WindowCapExceeded { vertex: v as u64, cap: self.cap });
        }
        self.grow_to(v + 1);
        Ok(())
    }

    /// Grows the window to `n` vertices (no-op if already that large).
    pub fn grow_to(&mut self, n: u32) {
        if n <= self.window {
            return;
        }
        self.window = n;
        self.colors.resize(pairs_below(n), Color::White);
        self.green_adj.resize(n as usize, Vec::new());
        self.red_adj.resize(n as usize, Vec::new());
    }

    pub fn color(&self, e: Pair) -> Color {
        self.colors.get(canonical_index(e) as usize).copied().unwrap_or(Color::White)
    }

    pub fn color_of(&self, a: Vertex, b: Vertex) -> Color {
        match Pair::try_new(a, b) {
            Some(p) => self.color(p),
            None => Color::White,
        }
    }

    pub fn is_white(&self, e: Pair) -> bool {
        self.color(e) == Color::White
    }

    /// Colors the white edge `e`, growing the window to cover its endpoints.
    pub fn play(&mut self, e: Pair, c: Color) -> Result<()> {
        if c == Color::White {
            return Err(Error::WhiteForbidden);
        }
        if !self.is_white(e) {
            return Err(Error::EdgeAlreadyColored(e));
        }
        self.ensure_vertex(e.v)?;
        let idx = canonical_index(e);
        self.colors[idx as usize] = c;
        let adj = match c {
            Color::Green => {
                self.green_count += 1;
                &mut self.green_adj
            }
            _ => &mut self.red_adj,
        };
        adj[e.u as usize].push(e.v);
        adj[e.v as usize].push(e.u);
        self.history.push((e, c));
        if idx == self.min_white {
            let len = self.colors.len() as EdgeIndex;
            while self.min_white < len && self.colors[self.min_white as usize] != Color::White {
                self.min_white += 1;
            }
        }
        Ok(())
    }

    /// Returns a copy with `e` colored `c`.
    pub fn played(&self, e: Pair, c: Color) -> Result<Board> {
        let mut b = self.clone();
        b.play(e, c)?;
        Ok(b)
    }

    pub fn green_neighbors(&self, v: Vertex) -> &[Vertex] {
        self.green_adj.get(v as usize).map_or(&[], Vec::as_slice)
    }

    pub fn red_neighbors(&self, v: Vertex) -> &[Vertex] {
        self.red_adj.get(v as usize).map_or(&[], Vec::as_slice)
    }

    /// Number of window edges at `v` with color `c`.
    pub fn degree(&self, v: Vertex, c: Color) -> usize {
        match c {
            Color::Green => self.green_neighbors(v).len(),
            Color::Red => self.red_neighbors(v).len(),
            Color::White => {
                if v < self.window {
                    self.window as usize - 1 - self.degree(v, Color::Green) - self.degree(v, Color::Red)
                } else {
                    self.window as usize
                }
            }
        }
    }

    /// True when some colored edge touches `v`.
    pub fn is_touched(&self, v: Vertex) -> bool {
        self.degree(v, Color::Green) + self.degree(v, Color::Red) > 0
    }

    /// True when some green edge touches `v`.
    pub fn is_covered(&self, v: Vertex) -> bool {
        self.degree(v, Color::Green) > 0
    }

    /// The `n` least vertices without colored edges.
    pub fn fresh_vertices(&self, n: usize) -> Result<Vec<Vertex>> {
        self.fresh_vertices_excluding(n, &[])
    }

    /// Like [`Board::fresh_vertices`], skipping the vertices in `exclude`.
    pub fn fresh_vertices_excluding(&self, n: usize, exclude: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut out = Vec::with_capacity(n);
        let mut v: Vertex = 0;
        while out.len() < n {
            if v >= self.cap {
                return Err(Error::WindowCapExceeded { vertex: v as u64, cap: self.cap });
            }
            if !self.is_touched(v) && !exclude.contains(&v) {
                out.push(v);
            }
            v += 1;
        }
        Ok(out)
    }

    /// Fresh vertices, with the window grown to contain them.
    pub fn reserve_fresh(&mut self, n: usize) -> Result<Vec<Vertex>> {
        let out = self.fresh_vertices(n)?;
        if let Some(&m) = out.iter().max() {
            self.ensure_vertex(m)?;
        }
        Ok(out)
    }

    /// The white edge of least canonical index. Edges outside the window are
    /// white, so this always exists.
    pub fn min_white_edge(&self) -> Pair {
        pair_of(self.min_white)
    }

    /// The least white edge among window vertices only.
    pub fn min_white_edge_in_window(&self) -> Result<Pair> {
        if (self.min_white as usize) < self.colors.len() {
            Ok(pair_of(self.min_white))
        } else {
            Err(Error::NoWhiteEdge)
        }
    }

    pub fn green_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.edges_of(Color::Green)
    }

    pub fn red_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.edges_of(Color::Red)
    }

    fn edges_of(&self, c: Color) -> impl Iterator<Item = Pair> + '_ {
        self.history.iter().filter(move |&&(_, x)| x == c).map(|&(e, _)| e)
    }

    /// White edges with both endpoints in the window, in canonical order.
    pub fn white_window_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.colors
            .iter()
            .enumerate()
            .skip(self.min_white as usize)
            .filter(|(_, &c)| c == Color::White)
            .map(|(i, _)| pair_of(i as EdgeIndex))
    }

    pub fn to_transcript(&self) -> Transcript {
        Transcript {
            window_cap: self.cap,
            moves: self.history.iter().enumerate().map(|(t, &(e, c))| TranscriptMove { t: t as u64, e, c }).collect(),
            final_window: self.window,
        }
    }

    pub fn from_transcript(t: &Transcript) -> Result<Board> {
        let bad = |msg: String| Error::MalformedTranscript(msg);
        let mut b = Board::with_cap(t.window_cap);
        for (i, m) in t.moves.iter().enumerate() {
            if m.t != i as u64 {
                return Err(bad(format!("move {i} is numbered {}", m.t)));
            }
            match b.play(m.e, m.c) {
                Ok(()) => {}
                Err(Error::EdgeAlreadyColored(e)) => return Err(bad(format!("edge {e} played twice"))),
                Err(Error::WhiteForbidden) => return Err(bad(format!("move {i} is white"))),
                Err(e) => return Err(bad(e.to_string())),
            }
        }
        if t.final_window < b.window {
            return Err(bad(format!("final window {} is smaller than the played window {}", t.final_window, b.window)));
        }
        if t.final_window > b.cap {
            return Err(bad(format!("final window {} exceeds the cap", t.final_window)));
        }
        b.grow_to(t.final_window);
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    pub t: u64,
    pub e: Pair,
    pub c: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transcript {
    pub window_cap: u32,
    pub moves: Vec<TranscriptMove>,
    pub final_window: u32,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcripts always serialize")
    }

    pub fn from_json(s: &str) -> Result<Transcript> {
        serde_json::from_str(s).map_err(|e| Error::MalformedTranscript(e.to_string()))
    }
}

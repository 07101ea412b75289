//! The three small games used by the bipartiteness strategy, and the hand
//! policies for the two smaller ones.
//!
//! Vertices are numbered n=0, k=1, l=2, x=3, y=4 in every game; the smaller
//! games simply omit k and l. Edges are listed in canonical order.

use crate::board::{canonical_index, Color, Pair, Vertex};

use super::{FiniteGameSpec, HiderPolicy};

pub const N: Vertex = 0;
pub const K: Vertex = 1;
pub const L: Vertex = 2;
pub const X: Vertex = 3;
pub const Y: Vertex = 4;

/// Vertices of game `s`.
pub fn subgame_vertices(s: usize) -> &'static [Vertex] {
    match s {
        0 => &[N, X, Y],
        1 => &[N, K, X, Y],
        2 => &[N, K, L, X, Y],
        _ => panic!("subgames are numbered 0, 1, 2"),
    }
}

/// Edges of game `s` in canonical order.
pub fn subgame_universe(s: usize) -> Vec<Pair> {
    let vs = subgame_vertices(s);
    let mut out: Vec<Pair> =
        vs.iter().flat_map(|&a| vs.iter().filter(move |&&b| a < b).map(move |&b| Pair::new(a, b))).collect();
    out.sort_by_key(|&p| canonical_index(p));
    out
}

pub fn make_bipartite_subgame(s: usize) -> FiniteGameSpec {
    let universe = subgame_universe(s);
    let initial = universe
        .iter()
        .map(|&e| {
            if e == Pair::new(X, Y) {
                Color::Green
            } else if (s >= 1 && e == Pair::new(N, X)) || (s == 2 && e == Pair::new(N, Y)) {
                Color::Red
            } else {
                Color::White
            }
        })
        .collect();
    FiniteGameSpec::new(
        format!("g{s}"),
        universe,
        initial,
        Box::new(|u, c| cond_i(u, c) || cond_ii(u, c) || cond_iii(u, c)),
        Box::new(|u, c| cond_iii(u, c) && !cond_i(u, c)),
    )
    .expect("subgame specs are well formed")
}

/// Adjacency bitmasks for vertices below 16.
#[derive(Clone, Copy)]
struct Masks {
    green: [u16; 16],
    white: [u16; 16],
}

impl Masks {
    fn new(universe: &[Pair], colors: &[Color]) -> Masks {
        let mut m = Masks { green: [0; 16], white: [0; 16] };
        for (&e, &c) in universe.iter().zip(colors) {
            let (a, b) = (e.u() as usize, e.v() as usize);
            let rows = match c {
                Color::Green => &mut m.green,
                Color::White => &mut m.white,
                Color::Red => continue,
            };
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        m
    }

    fn open(&self) -> [u16; 16] {
        std::array::from_fn(|i| self.green[i] | self.white[i])
    }
}

fn support(adj: &[u16; 16]) -> u16 {
    (0..16).filter(|&i| adj[i] != 0).fold(0, |m, i| m | 1 << i)
}

/// Side assignment for a bipartite graph (bit set = second side), or None.
fn sides(adj: &[u16; 16]) -> Option<u16> {
    let mut seen: u16 = 0;
    let mut side: u16 = 0;
    for root in 0..16 {
        if adj[root] == 0 || seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let sv = side >> v & 1;
            let mut nb = adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if seen >> w & 1 == 1 {
                    if side >> w & 1 == sv {
                        return None;
                    }
                } else {
                    seen |= 1 << w;
                    if sv == 0 {
                        side |= 1 << w;
                    }
                    stack.push(w);
                }
            }
        }
    }
    Some(side)
}

fn reach(adj: &[u16; 16], from: usize) -> u16 {
    let mut seen: u16 = 1 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// (I): a green odd cycle.
pub fn cond_i(universe: &[Pair], colors: &[Color]) -> bool {
    sides(&Masks::new(universe, colors).green).is_none()
}

/// (II): no odd cycle avoiding red edges.
pub fn cond_ii(universe: &[Pair], colors: &[Color]) -> bool {
    sides(&Masks::new(universe, colors).open()).is_some()
}

// The green graph when it is connected, bipartite, and touches n:
// (support, sides).
fn green_core(m: &Masks) -> Option<(u16, u16)> {
    let sup = support(&m.green);
    if sup >> N & 1 == 0 {
        return None;
    }
    let side = sides(&m.green)?;
    (reach(&m.green, N as usize) == sup).then_some((sup, side))
}

fn white_inside(m: &Masks, sup: u16) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..16usize).filter(move |&a| sup >> a & 1 == 1).flat_map(move |a| {
        (a + 1..16).filter(move |&b| sup >> b & 1 == 1 && m.white[a] >> b & 1 == 1).map(move |b| (a, b))
    })
}

/// (III): the green graph is connected, bipartite, touches n, and has no
/// white edge inside its vertex set.
pub fn cond_iii(universe: &[Pair], colors: &[Color]) -> bool {
    let m = Masks::new(universe, colors);
    match green_core(&m) {
        Some((sup, _)) => white_inside(&m, sup).next().is_none(),
        None => false,
    }
}

/// The endgame condition: as (III), except that white edges inside the
/// green vertex set are allowed when they join vertices on the same side.
/// Answering red to everything from such a position wins for Hider.
pub fn blacksquare(universe: &[Pair], colors: &[Color]) -> bool {
    let m = Masks::new(universe, colors);
    match green_core(&m) {
        Some((sup, side)) => white_inside(&m, sup).all(|(a, b)| (side >> a & 1) == (side >> b & 1)),
        None => false,
    }
}

/// Whether `a` and `b` are joined by green edges.
pub(crate) fn green_connected(universe: &[Pair], colors: &[Color], a: Vertex, b: Vertex) -> bool {
    let m = Masks::new(universe, colors);
    reach(&m.green, a as usize) >> b & 1 == 1
}

/// Whether the green edges form one connected graph.
pub(crate) fn green_is_connected(universe: &[Pair], colors: &[Color]) -> bool {
    let m = Masks::new(universe, colors);
    let sup = support(&m.green);
    sup == 0 || reach(&m.green, sup.trailing_zeros() as usize) == sup
}

/// A permutation of the five subgame vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry(pub [Vertex; 5]);

impl Symmetry {
    pub const ID: Symmetry = Symmetry([0, 1, 2, 3, 4]);
    /// Swaps k and l.
    pub const KL: Symmetry = Symmetry([0, 2, 1, 3, 4]);
    /// Swaps x and y.
    pub const XY: Symmetry = Symmetry([0, 1, 2, 4, 3]);

    /// The four symmetries of the largest game.
    pub fn group() -> [Symmetry; 4] {
        [Symmetry::ID, Symmetry::KL, Symmetry::XY, Symmetry::KL.then(Symmetry::XY)]
    }

    /// Apply `self`, then `next`.
    pub fn then(self, next: Symmetry) -> Symmetry {
        Symmetry(self.0.map(|v| next.0[v as usize]))
    }

    pub fn inverse(self) -> Symmetry {
        let mut inv = [0; 5];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as Vertex;
        }
        Symmetry(inv)
    }

    pub fn pair(self, e: Pair) -> Pair {
        Pair::new(self.0[e.u() as usize], self.0[e.v() as usize])
    }

    /// Image of an edge of the largest game, edges named by canonical index.
    pub fn edge(self, i: usize) -> usize {
        canonical_index(self.pair(crate::board::pair_of(i as u64))) as usize
    }

    /// Recolors a position of the largest game: the result gives `e` the
    /// color the input gives to `self⁻¹(e)`.
    pub fn position(self, colors: &[Color]) -> Vec<Color> {
        let mut out = vec![Color::White; colors.len()];
        for (i, &c) in colors.iter().enumerate() {
            out[self.edge(i)] = c;
        }
        out
    }
}

/// Green on the first move, then red once the endgame condition holds.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tau0;

impl HiderPolicy for Tau0 {
    fn reply(&self, colors: &[Color], _history: &[(usize, Color)], _edge: usize) -> Color {
        if blacksquare(&subgame_universe(0), colors) {
            Color::Red
        } else {
            Color::Green
        }
    }
}

/// The four-case hand policy for the game with vertices n, k, x, y.
#[derive(Debug, Clone)]
pub struct Tau1 {
    universe: Vec<Pair>,
}

impl Default for Tau1 {
    fn default() -> Self {
        Tau1 { universe: subgame_universe(1) }
    }
}

impl Tau1 {
    // Letters: A=nk B=nx C=ny D=kx E=ky F=xy
    const A: usize = 0;
    const D: usize = 2;
    const C: usize = 3;
    const E: usize = 4;
}

impl HiderPolicy for Tau1 {
    fn reply(&self, colors: &[Color], history: &[(usize, Color)], q: usize) -> Color {
        use Color::{Green, Red};
        let (a, c, d, e) = (Tau1::A, Tau1::C, Tau1::D, Tau1::E);
        if blacksquare(&self.universe, colors) {
            return Red;
        }
        let white = |i: usize| colors[i] == Color::White;
        match history.first().map(|h| h.0) {
            None => match q {
                _ if q == a || q == c || q == e => Green,
                _ => Red,
            },
            // Green on E and on whichever of C, D is played second.
            Some(f) if f == a => {
                if q == e || (q == c && !white(d)) || (q == d && !white(c)) {
                    Green
                } else {
                    Red
                }
            }
            // Green until n reaches y.
            Some(f) if f == d => {
                if green_connected(&self.universe, colors, N, Y) {
                    Red
                } else {
                    Green
                }
            }
            // D red; green on whichever of A, C comes first.
            Some(f) if f == e => {
                if (q == a && white(c)) || (q == c && white(a)) {
                    Green
                } else {
                    Red
                }
            }
            _ => Red,
        }
    }
}

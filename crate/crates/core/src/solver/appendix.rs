//! The hand policy for the five-vertex game, and the twelve endgame
//! positions it steers toward.
//!
//! Edge letters (canonical index in parentheses): B=nk (0), C=nl (1),
//! A=kl (2), H=nx (3), D=kx (4), F=lx (5), I=ny (6), E=ky (7), G=ly (8),
//! J=xy (9). The game starts with J green and H, I red.

use serde::Serialize;

use crate::board::{Color, Pair};
use crate::graph::{two_coloring, Graph};

use super::bipartite::{blacksquare, green_is_connected, make_bipartite_subgame, subgame_universe, Symmetry};
use super::{verify_policy_with, HiderPolicy};

const B: usize = 0;
const C: usize = 1;
const A: usize = 2;
const H: usize = 3;
const D: usize = 4;
const F: usize = 5;
const I: usize = 6;
const E: usize = 7;
const G: usize = 8;
const J: usize = 9;

const LETTERS: [char; 10] = ['B', 'C', 'A', 'H', 'D', 'F', 'I', 'E', 'G', 'J'];

/// Letter name of an edge of the five-vertex game.
pub fn letter(i: usize) -> char {
    LETTERS[i]
}

// Playing the last white edge of {D,G} or {E,F} starts a case.
fn mate(e: usize) -> Option<usize> {
    match e {
        D => Some(G),
        G => Some(D),
        E => Some(F),
        F => Some(E),
        _ => None,
    }
}

fn is_trigger(colors: &[Color], e: usize) -> bool {
    matches!(e, A | B | C) || mate(e).is_some_and(|m| colors[m] != Color::White)
}

fn other(pair: [usize; 2], e: usize) -> usize {
    if pair[0] == e {
        pair[1]
    } else {
        pair[0]
    }
}

fn green_if(b: bool) -> Color {
    if b {
        Color::Green
    } else {
        Color::Red
    }
}

/// The 21-case policy. Red until Seeker plays A, B, C, or the last white
/// edge of {D,G} or {E,F}; the case then depends on which came first.
#[derive(Debug, Clone)]
pub struct AppendixPolicy {
    universe: Vec<Pair>,
    initial: Vec<Color>,
}

impl Default for AppendixPolicy {
    fn default() -> Self {
        AppendixPolicy { universe: subgame_universe(2), initial: make_bipartite_subgame(2).initial }
    }
}

impl HiderPolicy for AppendixPolicy {
    fn reply(&self, colors: &[Color], history: &[(usize, Color)], q: usize) -> Color {
        if blacksquare(&self.universe, colors) {
            return Color::Red;
        }
        let mut before = self.initial.clone();
        let mut trigger = None;
        for (i, &(e, c)) in history.iter().enumerate() {
            if is_trigger(&before, e) {
                trigger = Some(i);
                break;
            }
            before[e] = c;
        }
        let Some(t) = trigger else {
            return green_if(is_trigger(colors, q));
        };
        let (et, _) = history[t];
        let after = &history[t + 1..];
        match et {
            A => self.case_a_first(colors, q),
            B | C => {
                let flip_kl = if et == C { Symmetry::KL } else { Symmetry::ID };
                let at_trigger = flip_kl.position(&before);
                let (dw, ew) = (at_trigger[D] == Color::White, at_trigger[E] == Color::White);
                let sym = if dw && !ew { flip_kl.then(Symmetry::XY) } else { flip_kl };
                let (cc, q, after) = canonical(sym, colors, q, after);
                match (dw, ew) {
                    (true, true) => green_if(q == D || q == E),
                    (false, false) => both_red(&cc, q),
                    _ => self.one_white(&cc, q, &after),
                }
            }
            _ => {
                let sym = match et {
                    D => Symmetry::ID,
                    E => Symmetry::XY,
                    F => Symmetry::KL,
                    _ => Symmetry::KL.then(Symmetry::XY),
                };
                let (cc, q, after) = canonical(sym, colors, q, after);
                diagonal_first(&cc, q, &after)
            }
        }
    }
}

fn canonical(
    sym: Symmetry,
    colors: &[Color],
    q: usize,
    after: &[(usize, Color)],
) -> (Vec<Color>, usize, Vec<(usize, Color)>) {
    (sym.position(colors), sym.edge(q), after.iter().map(|&(e, c)| (sym.edge(e), c)).collect())
}

impl AppendixPolicy {
    // A came first: green to the first of {B,C}, green to the first edge
    // completing {D,G} or {E,F}, red otherwise.
    fn case_a_first(&self, colors: &[Color], q: usize) -> Color {
        match q {
            B | C => green_if(colors[other([B, C], q)] == Color::White),
            D | E | F | G => {
                let last = colors[mate(q).unwrap()] != Color::White;
                let done = [D, E, F, G].iter().any(|&x| colors[x] == Color::Green);
                green_if(last && !done)
            }
            _ => Color::Red,
        }
    }

    // B came first with exactly one of D, E white, arranged so that E is.
    fn one_white(&self, cc: &[Color], q: usize, after: &[(usize, Color)]) -> Color {
        let white = |x: usize| cc[x] == Color::White;
        let after_a = |q: usize| green_if(q == G || (matches!(q, E | F) && !white(other([E, F], q))));
        let until_connected = || green_if(!green_is_connected(&self.universe, cc));
        let f_red_first_of = |pair: [usize; 2], q: usize| {
            if q == F {
                Color::Red
            } else {
                green_if(pair.contains(&q) && white(other(pair, q)))
            }
        };
        let a_or_last_of_ce = |q: usize| green_if(q == A || (matches!(q, C | E) && !white(other([C, E], q))));
        let m1 = after.first().map(|h| h.0);
        let m2 = after.get(1).map(|h| h.0);
        match m1 {
            None => green_if(matches!(q, A | E | G)),
            Some(A) => after_a(q),
            Some(C) => match m2 {
                None => green_if(matches!(q, A | E | G)),
                Some(A) => after_a(q),
                Some(F) => until_connected(),
                Some(G) => f_red_first_of([A, E], q),
                _ => Color::Red,
            },
            Some(F) => match m2 {
                None => green_if(matches!(q, A | E | G)),
                Some(A) => {
                    if q == C {
                        Color::Red
                    } else {
                        green_if(matches!(q, E | G) && white(other([E, G], q)))
                    }
                }
                Some(C) => until_connected(),
                Some(G) => a_or_last_of_ce(q),
                _ => Color::Red,
            },
            Some(G) => match m2 {
                None => green_if(q == A),
                Some(C) => f_red_first_of([A, E], q),
                Some(E) => f_red_first_of([A, C], q),
                Some(F) => a_or_last_of_ce(q),
                _ => Color::Red,
            },
            _ => Color::Red,
        }
    }
}

// B came first with D and E both red: green to the first of {A,C} and the
// first of {F,G}.
fn both_red(cc: &[Color], q: usize) -> Color {
    let first_of = |pair: [usize; 2]| pair.contains(&q) && pair.iter().all(|&x| cc[x] != Color::Green);
    green_if(first_of([A, C]) || first_of([F, G]))
}

// D completed {D,G} before any of A, B, C was played.
fn diagonal_first(cc: &[Color], q: usize, after: &[(usize, Color)]) -> Color {
    let mut rest = after.iter().filter(|h| matches!(h.0, A | B | C));
    match rest.next() {
        None => green_if(matches!(q, A | B | C)),
        Some(&(A, _)) => green_if(matches!(q, B | C)),
        Some(&(C, _)) => match rest.find(|h| matches!(h.0, A | B)) {
            None => match q {
                A => Color::Green,
                B => green_if(cc[F] == Color::Red),
                _ => Color::Red,
            },
            Some(&(B, Color::Red)) => green_if(matches!(q, A | F)),
            _ => Color::Red,
        },
        _ => Color::Red,
    }
}

/// The twelve endgame positions, numbered from 1. Each is given by its
/// green edge set. H and I are red, as is every edge joining opposite sides
/// of the green graph; all other edges are white.
pub fn figure_positions() -> Vec<Vec<Color>> {
    let greens: [&[usize]; 12] = [
        &[D, A, B],
        &[D, A, C],
        &[D, B],
        &[D, C, B],
        &[D, C, F],
        &[B, E],
        &[B, A, G],
        &[B, A, E],
        &[B, A, F],
        &[B, G, E],
        &[B, G, C],
        &[B, C, F],
    ];
    let universe = subgame_universe(2);
    greens
        .iter()
        .map(|gs| {
            let mut c = vec![Color::White; 10];
            c[H] = Color::Red;
            c[I] = Color::Red;
            c[J] = Color::Green;
            for &g in gs.iter() {
                c[g] = Color::Green;
            }
            let green = Graph::from_edges((0..10).filter(|&i| c[i] == Color::Green).map(|i| universe[i]));
            let side = two_coloring(&green).expect("endgame green graphs are bipartite");
            for i in 0..10 {
                let (a, b) = (universe[i].u() as usize, universe[i].v() as usize);
                if c[i] == Color::White && side[a].is_some() && side[b].is_some() && side[a] != side[b] {
                    c[i] = Color::Red;
                }
            }
            c
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FigureMatch {
    /// 1-based position number.
    pub position: usize,
    /// Index into [`Symmetry::group`].
    pub symmetry: usize,
    /// Same coloring, no symmetry and no extra red edges.
    pub identical: bool,
}

/// Finds an endgame position that `colors` is obtained from, up to symmetry
/// and recoloring some white edges red. Identity matches are preferred.
pub fn match_figure(colors: &[Color]) -> Option<FigureMatch> {
    let figs = figure_positions();
    let mut best: Option<FigureMatch> = None;
    for (si, sym) in Symmetry::group().into_iter().enumerate() {
        for (pi, fig) in figs.iter().enumerate() {
            let target = sym.position(fig);
            let fits = target.iter().zip(colors).all(|(&t, &c)| match t {
                Color::Green => c == Color::Green,
                Color::Red => c == Color::Red,
                Color::White => c != Color::Green,
            });
            if fits {
                let m = FigureMatch { position: pi + 1, symmetry: si, identical: si == 0 && target == colors };
                if m.identical {
                    return Some(m);
                }
                best = best.or(Some(m));
            }
        }
    }
    best
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub pass: bool,
    pub sequences: usize,
    pub nodes: usize,
    pub counterexample: Option<Vec<(Pair, Color)>>,
    /// Plays reaching the endgame condition, counted per play prefix.
    pub endgame_entries: usize,
    pub matched_identically: usize,
    pub matched_non_identically: usize,
    pub unmatched: usize,
    /// A few non-identical matches as "moves -> position i (symmetry s)".
    pub non_identical_examples: Vec<String>,
    pub unmatched_examples: Vec<String>,
}

/// Exhaustively checks the hand policy, recording which endgame position
/// each play first reaches.
pub fn verify_appendix() -> AppendixReport {
    let spec = make_bipartite_subgame(2);
    let policy = AppendixPolicy::default();
    let universe = spec.universe.clone();
    let mut report = AppendixReport {
        pass: false,
        sequences: 0,
        nodes: 0,
        counterexample: None,
        endgame_entries: 0,
        matched_identically: 0,
        matched_non_identically: 0,
        unmatched: 0,
        non_identical_examples: Vec::new(),
        unmatched_examples: Vec::new(),
    };
    let describe = |history: &[(usize, Color)]| -> String {
        history
            .iter()
            .map(|&(e, c)| format!("{}{}", letter(e), if c == Color::Green { '+' } else { '-' }))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let v = verify_policy_with(&spec, &policy, &mut |colors, history| {
        let Some(&(last, _)) = history.last() else { return };
        if !blacksquare(&universe, colors) {
            return;
        }
        let mut prev = colors.to_vec();
        prev[last] = Color::White;
        if blacksquare(&universe, &prev) {
            return;
        }
        report.endgame_entries += 1;
        match match_figure(colors) {
            Some(m) if m.identical => report.matched_identically += 1,
            Some(m) => {
                report.matched_non_identically += 1;
                if report.non_identical_examples.len() < 10 {
                    report.non_identical_examples.push(format!(
                        "{} -> position {} (symmetry {})",
                        describe(history),
                        m.position,
                        m.symmetry
                    ));
                }
            }
            None => {
                report.unmatched += 1;
                if report.unmatched_examples.len() < 10 {
                    report.unmatched_examples.push(describe(history));
                }
            }
        }
    });
    report.pass = v.pass;
    report.sequences = v.sequences;
    report.nodes = v.nodes;
    report.counterexample = v.counterexample;
    report
}

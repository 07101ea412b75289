//! A finite laboratory for the separating property S0: a fixed template
//! coloring on roles `a`, `p0..p5`, `q0..q5`, `x0, x1, ...`, with the
//! colors of `x_i a` encoding a bit string and a parity bit deciding which
//! half of `Q` must be all red.
//!
//! Role numbering is fixed: `a = 0`, `p_i = 1 + i`, `q_j = 7 + j`,
//! `x_i = 13 + i`. Verdicts on truncated graphs only say a coloring is
//! consistent with S0 up to the horizon.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{Color, Pair, Vertex};
use crate::error::{Error, Result};
use crate::hider::{Check, Witness};

mod hider;
mod iso;

pub use hider::S0Hider;
pub use iso::{automorphism_count, graph_isomorphic, rigidity_check, Rigidity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A,
    P(u8),
    Q(u8),
    X(u32),
}

impl Role {
    pub fn vertex(self) -> Vertex {
        match self {
            Role::A => 0,
            Role::P(i) => 1 + i as Vertex,
            Role::Q(j) => 7 + j as Vertex,
            Role::X(i) => 13 + i,
        }
    }

    pub fn of(v: Vertex) -> Role {
        match v {
            0 => Role::A,
            1..=6 => Role::P((v - 1) as u8),
            7..=12 => Role::Q((v - 7) as u8),
            _ => Role::X(v - 13),
        }
    }

    /// 0 for `q0..q2`, 1 for `q3..q5`.
    pub fn q_half(self) -> Option<u8> {
        match self {
            Role::Q(j) => Some(j / 3),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::A => write!(f, "a"),
            Role::P(i) => write!(f, "p{i}"),
            Role::Q(j) => write!(f, "q{j}"),
            Role::X(i) => write!(f, "x{i}"),
        }
    }
}

/// Parses two role names written back to back, e.g. `x0x1` or `p2q4`.
pub fn parse_role_pair(s: &str) -> Result<Pair> {
    let bad = || Error::Invalid(format!("expected two roles like x0x1, got {s:?}"));
    let mut roles = Vec::new();
    let mut chars = s.trim().chars().peekable();
    while let Some(c) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let num = || digits.parse::<u32>().map_err(|_| bad());
        let role = match c {
            'a' if digits.is_empty() => Role::A,
            'p' if num()? < 6 => Role::P(num()? as u8),
            'q' if num()? < 6 => Role::Q(num()? as u8),
            'x' => Role::X(num()?),
            _ => return Err(bad()),
        };
        roles.push(role);
    }
    match roles[..] {
        [r, t] if r != t => Ok(Pair::new(r.vertex(), t.vertex())),
        _ => Err(bad()),
    }
}

/// Template color of an edge; `None` marks the free edges (`x_i a` and the
/// edges inside each half of `Q`).
pub fn template_edge(u: Role, v: Role) -> Option<Color> {
    use Role::*;
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let green = match (u, v) {
        (A, X(_)) => return None,
        (Q(i), Q(j)) if i / 3 == j / 3 => return None,
        (A, P(_)) | (P(_), P(_)) | (P(_), X(_)) => true,
        (P(i), Q(j)) => i < j,
        (X(i), X(j)) => i.abs_diff(j) == 1,
        (A, Q(_)) | (Q(_), Q(_)) | (Q(_), X(_)) => false,
        (A, A) => unreachable!("distinct roles"),
        _ => unreachable!("ordered roles"),
    };
    Some(if green { Color::Green } else { Color::Red })
}

/// A nonempty finite bit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<BitString> {
        if bits.is_empty() {
            return Err(Error::Invalid("bit strings are nonempty".into()));
        }
        Ok(BitString(bits))
    }

    /// `1010...` of length `len`.
    pub fn alternating(len: usize) -> BitString {
        BitString((0..len.max(1)).map(|i| i % 2 == 0).collect())
    }

    /// All strings of length `len`, in binary counting order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0u64..1 << len).map(move |n| BitString((0..len).map(|i| n >> (len - 1 - i) & 1 == 1).collect()))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }

    pub fn flipped(&self, i: usize) -> BitString {
        let mut b = self.0.clone();
        b[i] = !b[i];
        BitString(b)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<BitString> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Invalid(format!("not a bit string: {s:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        BitString::new(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parity of the number of ones; flipping any single bit flips it.
pub fn parity_coloring(s: &[bool]) -> u8 {
    (s.iter().filter(|&&b| b).count() % 2) as u8
}

/// A coloring of the pairs among roles `a, P, Q, x0..x_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub m: u32,
    colors: HashMap<Pair, Color>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    e: Pair,
    c: Color,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    m: u32,
    edges: Vec<EdgeEntry>,
}

impl ColoredGraph {
    pub fn new(m: u32) -> ColoredGraph {
        ColoredGraph { m, colors: HashMap::new() }
    }

    pub fn vertex_count(&self) -> u32 {
        13 + self.m
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> {
        let n = self.vertex_count();
        (1..n).flat_map(|b| (0..b).map(move |a| Pair::new(a, b)))
    }

    pub fn color(&self, e: Pair) -> Color {
        self.colors.get(&e).copied().unwrap_or(Color::White)
    }

    pub fn color_of(&self, u: Role, v: Role) -> Color {
        self.color(Pair::new(u.vertex(), v.vertex()))
    }

    pub fn set(&mut self, e: Pair, c: Color) {
        assert!(e.v() < self.vertex_count(), "{e} outside the truncation");
        if c == Color::White {
            self.colors.remove(&e);
        } else {
            self.colors.insert(e, c);
        }
    }

    pub fn green_edges(&self) -> Vec<Pair> {
        let mut out: Vec<Pair> = self.colors.iter().filter(|(_, &c)| c == Color::Green).map(|(&e, _)| e).collect();
        out.sort_by_key(|e| e.index());
        out
    }

    /// The template with `x_i a` green iff `g[i]` and the free `Q` edges
    /// given by `q_inside`.
    pub fn template(g: &BitString, q_inside: [Color; 2]) -> ColoredGraph {
        let mut out = ColoredGraph::new(g.len() as u32);
        for e in out.pairs().collect::<Vec<_>>() {
            let (u, v) = (Role::of(e.u()), Role::of(e.v()));
            let c = match template_edge(u, v) {
                Some(c) => c,
                None => match (u, v) {
                    (Role::A, Role::X(i)) => {
                        if g.bits()[i as usize] {
                            Color::Green
                        } else {
                            Color::Red
                        }
                    }
                    _ => q_inside[u.q_half().expect("free edges inside Q") as usize],
                },
            };
            out.set(e, c);
        }
        out
    }

    pub fn g_bits(&self) -> Vec<Option<bool>> {
        (0..self.m)
            .map(|i| match self.color_of(Role::A, Role::X(i)) {
                Color::Green => Some(true),
                Color::Red => Some(false),
                Color::White => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut edges: Vec<EdgeEntry> = self.colors.iter().map(|(&e, &c)| EdgeEntry { e, c }).collect();
        edges.sort_by_key(|x| x.e.index());
        serde_json::to_string(&GraphJson { m: self.m, edges }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<ColoredGraph> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut g = ColoredGraph::new(raw.m);
        for entry in raw.edges {
            if entry.e.v() >= g.vertex_count() {
                return Err(Error::Invalid(format!("{} outside the truncation m = {}", entry.e, raw.m)));
            }
            if g.colors.contains_key(&entry.e) {
                return Err(Error::Invalid(format!("{} listed twice", entry.e)));
            }
            g.set(entry.e, entry.c);
        }
        Ok(g)
    }
}

/// `phi(s)`: the template with `x_i a` green iff `s[i]`, every edge inside
/// `q0..q2` green and every edge inside `q3..q5` red.
pub fn reduction_map(s: &BitString) -> ColoredGraph {
    ColoredGraph::template(s, [Color::Green, Color::Red])
}

/// Outcome of the truncated consistency checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub m: u32,
    pub pass: bool,
    pub checks: Vec<Check>,
}

/// The degree threshold used for `a` by default: `ceil(m / 3)`.
pub fn default_threshold(m: u32) -> usize {
    m.div_ceil(3) as usize
}

/// Checks the role-labeled coloring against the template and the parity
/// rule, truncated at `x_{m-1}`. `a` must have at least `threshold` green
/// and `threshold` red edges into the `x` path.
pub fn s0_consistent_truncation(g: &ColoredGraph, threshold: usize) -> TruncationReport {
    use Role::*;
    let m = g.m;
    let mut checks = Vec::new();
    let mut push = |name: &str, r: std::result::Result<(), Witness>| checks.push(Check::new(name, r));

    let white: Vec<Pair> = g.pairs().filter(|&e| g.color(e) == Color::White).take(5).collect();
    push("total", if white.is_empty() { Ok(()) } else { Err(Witness::Edges(white)) });

    let xa: Vec<Color> = (0..m).map(|i| g.color_of(A, X(i))).collect();
    let (gn, rd) = (xa.iter().filter(|&&c| c == Color::Green).count(), xa.iter().filter(|&&c| c == Color::Red).count());
    push(
        "a-degrees",
        if gn >= threshold && rd >= threshold {
            Ok(())
        } else {
            Err(Witness::Note(format!("a has {gn} green and {rd} red edges into x, need {threshold} each")))
        },
    );

    let mismatch = |pairs: Vec<(Role, Role)>| -> std::result::Result<(), Witness> {
        let bad: Vec<Pair> = pairs
            .into_iter()
            .filter(|&(u, v)| Some(g.color_of(u, v)) != template_edge(u, v))
            .map(|(u, v)| Pair::new(u.vertex(), v.vertex()))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Witness::Edges(bad))
        }
    };
    let ps: Vec<Role> = (0..6).map(P).collect();
    let qs: Vec<Role> = (0..6).map(Q).collect();
    let xs: Vec<Role> = (0..m).map(X).collect();
    let cross = |a: &[Role], b: &[Role]| -> Vec<(Role, Role)> {
        a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).collect()
    };
    let inside = |a: &[Role]| -> Vec<(Role, Role)> {
        (0..a.len()).flat_map(|i| (i + 1..a.len()).map(move |j| (a[i], a[j]))).collect()
    };

    let red_deg: Vec<usize> = (0..6u8)
        .map(|i| {
            let others =
                std::iter::once(A).chain(ps.iter().copied()).chain(qs.iter().copied()).chain(xs.iter().copied());
            others.filter(|&r| r != P(i) && g.color_of(P(i), r) == Color::Red).count()
        })
        .collect();
    push(
        "p-red-degrees",
        match (0..6).find(|&i| red_deg[i] != i + 1) {
            None => Ok(()),
            Some(i) => Err(Witness::Note(format!("p{i} has red degree {}", red_deg[i]))),
        },
    );
    let mut c_pairs = cross(&[A], &ps);
    c_pairs.extend(inside(&ps));
    push("a-p-green", mismatch(c_pairs));
    push("p-q-pattern", mismatch(cross(&ps, &qs)));
    let mut e_pairs = cross(&[A], &qs);
    e_pairs.extend(cross(&qs[..3], &qs[3..]));
    push("a-q-red", mismatch(e_pairs));
    push("x-path", mismatch(inside(&xs)));
    push("x-p-green", mismatch(cross(&xs, &ps)));
    push("x-q-red", mismatch(cross(&xs, &qs)));

    let bits: Vec<bool> = xa.iter().map(|&c| c == Color::Green).collect();
    let half = if parity_coloring(&bits) == 0 { 0 } else { 1 };
    let q_half = &qs[half * 3..half * 3 + 3];
    let green_inside: Vec<Pair> = inside(q_half)
        .into_iter()
        .filter(|&(u, v)| g.color_of(u, v) != Color::Red)
        .map(|(u, v)| Pair::new(u.vertex(), v.vertex()))
        .collect();
    push("parity-rule", if green_inside.is_empty() { Ok(()) } else { Err(Witness::Edges(green_inside)) });

    let pass = checks.iter().all(|c| c.pass);
    TruncationReport { m, pass, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_numbering() {
        assert_eq!(Role::A.vertex(), 0);
        assert_eq!(Role::P(5).vertex(), 6);
        assert_eq!(Role::Q(0).vertex(), 7);
        assert_eq!(Role::X(3).vertex(), 16);
        for v in 0..40 {
            assert_eq!(Role::of(v).vertex(), v);
        }
        assert_eq!(parse_role_pair("x0x1").unwrap(), Pair::new(13, 14));
        assert_eq!(parse_role_pair("p2q4").unwrap(), Pair::new(3, 11));
        assert_eq!(parse_role_pair("ax3").unwrap(), Pair::new(0, 16));
        assert!(parse_role_pair("p7x1").is_err());
        assert!(parse_role_pair("x1x1").is_err());
    }

    #[test]
    fn template_examples() {
        use Role::*;
        assert_eq!(template_edge(A, P(0)), Some(Color::Green));
        assert_eq!(template_edge(P(2), Q(1)), Some(Color::Red));
        assert_eq!(template_edge(X(3), A), None);
        assert_eq!(template_edge(Q(0), Q(4)), Some(Color::Red));
        assert_eq!(template_edge(Q(1), Q(2)), None);
        assert_eq!(template_edge(X(4), X(5)), Some(Color::Green));
        assert_eq!(template_edge(X(4), X(6)), Some(Color::Red));
        assert_eq!(template_edge(P(1), Q(2)), Some(Color::Green));
    }

    #[test]
    fn parity_examples() {
        let bits = |s: &str| s.parse::<BitString>().unwrap();
        assert_eq!(parity_coloring(bits("0101").bits()), 0);
        assert_eq!(parity_coloring(bits("1000").bits()), 1);
        let s = bits("0110101");
        for i in 0..s.len() {
            assert_ne!(parity_coloring(s.bits()), parity_coloring(s.flipped(i).bits()));
        }
        assert!("".parse::<BitString>().is_err());
        assert!("012".parse::<BitString>().is_err());
    }

    #[test]
    fn truncation_examples() {
        let g = BitString::alternating(10); // five ones: parity 1, q3..q5 red
        let ok = ColoredGraph::template(&g, [Color::Red, Color::Red]);
        assert!(s0_consistent_truncation(&ok, default_threshold(10)).pass);

        let mut both = ok.clone();
        both.set(Pair::new(7, 8), Color::Green);
        both.set(Pair::new(10, 11), Color::Green);
        let r = s0_consistent_truncation(&both, default_threshold(10));
        assert!(!r.pass);
        assert_eq!(r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect::<Vec<_>>(), ["parity-rule"]);

        let mut broken = ok.clone();
        broken.set(Pair::new(Role::X(2).vertex(), Role::X(3).vertex()), Color::Red);
        let r = s0_consistent_truncation(&broken, default_threshold(10));
        assert!(!r.checks.iter().find(|c| c.name == "x-path").unwrap().pass);
    }

    #[test]
    fn reduction_examples() {
        let one: BitString = "1".parse().unwrap();
        let phi = reduction_map(&one);
        assert_eq!(phi.color_of(Role::A, Role::X(0)), Color::Green);
        for s in ["1011", "0111010111"] {
            let s: BitString = s.parse().unwrap();
            assert!(s0_consistent_truncation(&reduction_map(&s), 0).pass, "{s}");
        }
        for s in ["1001", "0111010110", "0000000000"] {
            let s: BitString = s.parse().unwrap();
            assert!(!s0_consistent_truncation(&reduction_map(&s), 0).pass, "{s}");
        }
    }

    #[test]
    fn json_round_trip() {
        let g = reduction_map(&"101".parse().unwrap());
        let j = g.to_json();
        assert_eq!(ColoredGraph::from_json(&j).unwrap(), g);
        assert_eq!(ColoredGraph::from_json(&j).unwrap().to_json(), j);
        assert!(ColoredGraph::from_json(r#"{"m":1,"edges":[{"e":[0,20],"c":"red"}]}"#).is_err());
    }
}

//! Graph properties and three-valued decisions at a position.
//!
//! A position decides a property when every completion of its white edges
//! agrees on it. For a property closed under adding edges this reduces to
//! two checks: the green graph already has it, or green plus white lacks it.
//! Bipartiteness is closed under removing edges and uses the mirrored rule.
//!
//! Two semantics are supported. `FiniteUniverse(n)` plays on the complete
//! graph with vertices `0..n`. `InfiniteTail` plays on ℕ: all edges beyond
//! the board window are white, and each property has a hand-derived rule:
//!
//! | property | in | out |
//! |---|---|---|
//! | cycle, girth, degree, matching, nonempty | green has it | never |
//! | connected, no isolated vertex | never | never |
//! | diameter ≤ d, d ≥ 2 | never | never |
//! | diameter ≤ 1 | never | some red edge |
//! | bipartite | never | green has an odd cycle |
//! | trivial | always | never |
//!
//! "Never" in the out column holds because the white tail alone supplies
//! any finite pattern (cycles, matchings, large stars) and joins every pair
//! through a common untouched vertex. "Never" in the in column holds because
//! a finite green graph leaves all but finitely many vertices isolated, and
//! a complete white tail contains triangles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{Board, Pair, Vertex};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::matching::max_matching_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecisionStatus {
    DecidedIn,
    DecidedOut,
    Undecided,
}

impl DecisionStatus {
    pub fn is_decided(self) -> bool {
        self != DecisionStatus::Undecided
    }

    /// Whether moving from `self` to `later` respects the rule that decided
    /// positions stay decided the same way.
    pub fn may_precede(self, later: DecisionStatus) -> bool {
        self == DecisionStatus::Undecided || self == later
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyId {
    Connected,
    Bipartite,
    ContainsCycleK(usize),
    GirthAtMostK(usize),
    DiameterAtMostD(usize),
    MaxDegreeAtLeastD(usize),
    ContainsKIndependentEdges(usize),
    NoIsolatedVertex,
    Nonempty,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    InfiniteTail,
    /// The complete graph on vertices `0..n`.
    FiniteUniverse(u32),
}

impl PropertyId {
    pub fn validate(self) -> Result<Self> {
        use PropertyId::*;
        let ok = match self {
            ContainsCycleK(k) | GirthAtMostK(k) => k >= 3,
            DiameterAtMostD(d) | MaxDegreeAtLeastD(d) => d >= 1,
            ContainsKIndependentEdges(k) => k >= 1,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Invalid(format!("parameter out of range for {self}")))
        }
    }

    /// Closed under removing edges rather than adding them.
    pub fn is_decreasing(self) -> bool {
        self == PropertyId::Bipartite
    }

    /// Evaluates the property on graph `g` with vertex set `0..n`.
    pub fn holds(self, g: &Graph, n: u32) -> bool {
        use PropertyId::*;
        match self {
            Trivial => true,
            Nonempty => g.edge_count() > 0,
            Bipartite => graph::two_coloring(g).is_ok(),
            ContainsCycleK(k) => graph::graph_has_cycle_of_length(g, k),
            GirthAtMostK(k) => (3..=k).any(|j| graph::graph_has_cycle_of_length(g, j)),
            MaxDegreeAtLeastD(d) => g.max_degree() >= d,
            ContainsKIndependentEdges(k) => {
                let edges: Vec<Pair> = g.edges().collect();
                max_matching_size(&edges) >= k
            }
            NoIsolatedVertex => (0..n).all(|v| g.degree(v) > 0),
            Connected => {
                n <= 1 || {
                    let dist = g.distances_from(0);
                    (0..n).all(|v| dist.get(v as usize).is_some_and(|&x| x != usize::MAX))
                }
            }
            DiameterAtMostD(d) => (0..n).all(|s| {
                let dist = g.distances_from(s);
                (0..n).all(|t| dist.get(t as usize).is_some_and(|&x| x <= d))
            }),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PropertyId::*;
        match self {
            Connected => write!(f, "connected"),
            Bipartite => write!(f, "bipartite"),
            ContainsCycleK(k) => write!(f, "cycle:{k}"),
            GirthAtMostK(k) => write!(f, "girth:{k}"),
            DiameterAtMostD(d) => write!(f, "diameter:{d}"),
            MaxDegreeAtLeastD(d) => write!(f, "degree:{d}"),
            ContainsKIndependentEdges(k) => write!(f, "indep:{k}"),
            NoIsolatedVertex => write!(f, "no-isolated"),
            Nonempty => write!(f, "nonempty"),
            Trivial => write!(f, "trivial"),
        }
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use PropertyId::*;
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = || -> Result<usize> {
            arg.ok_or_else(|| Error::Invalid(format!("property `{s}` needs a parameter")))?
                .parse()
                .map_err(|_| Error::Invalid(format!("bad parameter in `{s}`")))
        };
        let p = match name {
            "connected" => Connected,
            "bipartite" => Bipartite,
            "cycle" | "k-cycle" => ContainsCycleK(num()?),
            "girth" => GirthAtMostK(num()?),
            "diameter" => DiameterAtMostD(num()?),
            "degree" => MaxDegreeAtLeastD(num()?),
            "indep" | "matching" => ContainsKIndependentEdges(num()?),
            "no-isolated" => NoIsolatedVertex,
            "nonempty" => Nonempty,
            "trivial" => Trivial,
            _ => return Err(Error::Invalid(format!("unknown property `{s}`"))),
        };
        if arg.is_some()
            && !matches!(
                p,
                ContainsCycleK(_)
                    | GirthAtMostK(_)
                    | DiameterAtMostD(_)
                    | MaxDegreeAtLeastD(_)
                    | ContainsKIndependentEdges(_)
            )
        {
            return Err(Error::Invalid(format!("property `{name}` takes no parameter")));
        }
        p.validate()
    }
}

/// Decides `p` at position `b`.
pub fn decide(p: PropertyId, b: &Board, s: Semantics) -> Result<DecisionStatus> {
    p.validate()?;
    match s {
        Semantics::FiniteUniverse(n) => decide_finite(p, b, n),
        Semantics::InfiniteTail => Ok(decide_tail(p, b)),
    }
}

fn status(is_in: bool, is_out: bool) -> DecisionStatus {
    match (is_in, is_out) {
        (true, _) => DecisionStatus::DecidedIn,
        (false, true) => DecisionStatus::DecidedOut,
        _ => DecisionStatus::Undecided,
    }
}

fn decide_finite(p: PropertyId, b: &Board, n: u32) -> Result<DecisionStatus> {
    if b.window() > n {
        return Err(Error::Invalid(format!("board uses vertices beyond the {n}-vertex universe")));
    }
    let mut green = Graph::with_vertices(n as usize);
    let mut open = Graph::with_vertices(n as usize);
    for v in 1..n {
        for u in 0..v {
            let e = Pair::new(u, v);
            match b.color(e) {
                crate::board::Color::Green => {
                    green.add_edge(e);
                    open.add_edge(e);
                }
                crate::board::Color::White => open.add_edge(e),
                crate::board::Color::Red => {}
            }
        }
    }
    Ok(if p.is_decreasing() {
        status(p.holds(&open, n), !p.holds(&green, n))
    } else {
        status(p.holds(&green, n), !p.holds(&open, n))
    })
}

fn decide_tail(p: PropertyId, b: &Board) -> DecisionStatus {
    use PropertyId::*;
    match p {
        Trivial => DecisionStatus::DecidedIn,
        Connected | NoIsolatedVertex => DecisionStatus::Undecided,
        DiameterAtMostD(1) => status(false, b.red_count() > 0),
        DiameterAtMostD(_) => DecisionStatus::Undecided,
        Bipartite => {
            let green: Vec<Pair> = b.green_edges().collect();
            status(false, graph::odd_cycle_exists(&green))
        }
        Nonempty | ContainsCycleK(_) | GirthAtMostK(_) | MaxDegreeAtLeastD(_) | ContainsKIndependentEdges(_) => {
            let g = green_graph(b);
            status(p.holds(&g, b.window()), false)
        }
    }
}

/// The green graph of `b` over its window.
pub fn green_graph(b: &Board) -> Graph {
    let mut g = Graph::with_vertices(b.window() as usize);
    for e in b.green_edges() {
        g.add_edge(e);
    }
    g
}

/// Relevance of a white edge for the k-matching property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    Relevant,
    Irrelevant,
}

/// An edge is relevant when making it green would create `k` independent
/// green edges.
pub fn classify_edge(b: &Board, e: Pair, k: usize) -> EdgeClass {
    let mut edges: Vec<Pair> = b.green_edges().collect();
    edges.push(e);
    if max_matching_size(&edges) >= k {
        EdgeClass::Relevant
    } else {
        EdgeClass::Irrelevant
    }
}

/// Vertices touched by green edges, sorted.
pub fn green_support(b: &Board) -> Vec<Vertex> {
    (0..b.window()).filter(|&v| b.is_covered(v)).collect()
}

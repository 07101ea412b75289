use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::board::{Board, Color, Pair, Vertex};
use crate::error::Result;
use crate::graph::two_coloring;
use crate::properties::{green_graph, PropertyId};
use crate::solver::{
    make_bipartite_subgame, solve, AppendixPolicy, FiniteGameSpec, HiderPolicy, Policy, Tau0, Tau1, K, L, N, X, Y,
};

use super::{HiderStrategy, MonitorReport, StageState, Witness};

/// Where the policy for the five-vertex subgame comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tau2Source {
    /// The 21-case hand policy.
    #[default]
    Appendix,
    /// The table extracted by the minimax solver.
    Solved,
}

/// A completed stage: at `turn` the conditions for the next stage held
/// with `n` as the new least uncovered vertex bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageBoundary {
    pub turn: usize,
    pub n: Vertex,
}

/// Real vertices playing the roles of one stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bindings<'a> {
    pub n: Vertex,
    pub k: Option<Vertex>,
    pub l: Option<Vertex>,
    pub x_part: &'a [Vertex],
    pub y_part: &'a [Vertex],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    /// A subgame edge realized by a single real edge.
    Direct(usize),
    /// A subgame edge standing for all real edges from one vertex to a part.
    Form(usize),
    Off,
}

#[derive(Debug, Clone)]
struct Stage {
    index: usize,
    n: Vertex,
    s: usize,
    k: Option<Vertex>,
    l: Option<Vertex>,
    x_part: Vec<Vertex>,
    y_part: Vec<Vertex>,
    /// Subgame vertex of each bound real vertex.
    roles: HashMap<Vertex, Vertex>,
    universe: Vec<Pair>,
    colors: Vec<Color>,
    history: Vec<(usize, Color)>,
}

impl Stage {
    fn target(&self, e: Pair) -> Target {
        let (Some(&a), Some(&b)) = (self.roles.get(&e.u()), self.roles.get(&e.v())) else {
            return Target::Off;
        };
        if a == b {
            return Target::Off;
        }
        let p = Pair::new(a, b);
        if p == Pair::new(X, Y) {
            return Target::Off;
        }
        let i = self.universe.iter().position(|&q| q == p).expect("bound roles lie in the subgame");
        if a == X || a == Y || b == X || b == Y {
            Target::Form(i)
        } else {
            Target::Direct(i)
        }
    }

    fn real(&self, abstract_vertex: Vertex) -> Vertex {
        match abstract_vertex {
            N => self.n,
            K => self.k.expect("k bound"),
            L => self.l.expect("l bound"),
            _ => unreachable!("parts have no single representative"),
        }
    }

    fn form_edges(&self, i: usize) -> Vec<Pair> {
        let p = self.universe[i];
        let (single, part) = if p.v() == X || p.v() == Y { (p.u(), p.v()) } else { (p.v(), p.u()) };
        let v = self.real(single);
        let members = if part == X { &self.x_part } else { &self.y_part };
        members.iter().map(|&m| Pair::new(v, m)).collect()
    }

    fn abstract_color(&self, board: &Board, i: usize) -> Color {
        match self.target_of_index(i) {
            Some(e) => board.color(e),
            None => form_color(self.form_edges(i).into_iter().map(|e| board.color(e))),
        }
    }

    fn target_of_index(&self, i: usize) -> Option<Pair> {
        let p = self.universe[i];
        if [p.u(), p.v()].iter().any(|&v| v == X || v == Y) {
            None
        } else {
            Some(Pair::new(self.real(p.u()), self.real(p.v())))
        }
    }
}

fn form_color(colors: impl Iterator<Item = Color>) -> Color {
    let mut all_red = true;
    for c in colors {
        match c {
            Color::Green => return Color::Green,
            Color::White => all_red = false,
            Color::Red => {}
        }
    }
    if all_red {
        Color::Red
    } else {
        Color::White
    }
}

/// Staged strategy keeping the green graph bipartite while it can still
/// become connected. Each stage binds the least vertex `n` not yet covered
/// by green, the two sides of the green core and up to two fresh vertices
/// to one of three five-vertex subgames, and plays the subgame policy there.
pub struct BipartiteHider {
    tau2: Tau2Source,
    specs: Vec<FiniteGameSpec>,
    policies: Vec<Box<dyn HiderPolicy + Send>>,
    /// Replica of the game board, advanced one move at a time.
    own: Board,
    stage: Option<Stage>,
    next_index: usize,
    boundaries: Vec<StageBoundary>,
    failures: Vec<(usize, String)>,
}

impl Default for BipartiteHider {
    fn default() -> Self {
        BipartiteHider::new()
    }
}

impl BipartiteHider {
    pub fn new() -> BipartiteHider {
        BipartiteHider::with_tau2(Tau2Source::Appendix)
    }

    pub fn with_tau2(tau2: Tau2Source) -> BipartiteHider {
        let specs: Vec<FiniteGameSpec> = (0..3).map(make_bipartite_subgame).collect();
        let top: Box<dyn HiderPolicy + Send> = match tau2 {
            Tau2Source::Appendix => Box::new(AppendixPolicy::default()),
            Tau2Source::Solved => match solve(&specs[2]).expect("subgame fits the solver").policy {
                Policy::Hider(table) => Box::new(table),
                Policy::Seeker(_) => panic!("the five-vertex subgame is a Hider win"),
            },
        };
        BipartiteHider {
            tau2,
            specs,
            policies: vec![Box::new(Tau0), Box::new(Tau1::default()), top],
            own: Board::new(),
            stage: None,
            next_index: 0,
            boundaries: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn boundaries(&self) -> &[StageBoundary] {
        &self.boundaries
    }

    /// Subgame index of the current stage.
    pub fn subgame(&self) -> Option<usize> {
        self.stage.as_ref().map(|s| s.s)
    }

    /// Real vertices bound to the current stage's roles.
    pub fn bindings(&self) -> Option<Bindings<'_>> {
        self.stage.as_ref().map(|s| Bindings { n: s.n, k: s.k, l: s.l, x_part: &s.x_part, y_part: &s.y_part })
    }

    fn catch_up(&mut self, board: &Board) -> Result<()> {
        let t = self.own.turn();
        if board.turn() < t || (t > 0 && board.history()[t - 1] != self.own.history()[t - 1]) {
            *self = BipartiteHider::with_tau2(self.tau2);
        }
        while self.own.turn() < board.turn() {
            let t = self.own.turn();
            let (e, c) = board.history()[t];
            let before = self.stage.as_ref().map(|s| s.target(e));
            self.own.play(e, c)?;
            match before {
                None => self.start_stage()?,
                Some(target) => self.advance(target, t + 1)?,
            }
        }
        Ok(())
    }

    fn advance(&mut self, target: Target, turn: usize) -> Result<()> {
        let stage = self.stage.as_mut().expect("stage");
        let i = match target {
            Target::Direct(i) | Target::Form(i) => i,
            Target::Off => return Ok(()),
        };
        let new = stage.abstract_color(&self.own, i);
        if new == stage.colors[i] {
            return Ok(());
        }
        stage.colors[i] = new;
        stage.history.push((i, new));
        let spec = &self.specs[stage.s];
        if !spec.is_terminal(&stage.colors) {
            return Ok(());
        }
        if spec.hider_wins(&stage.colors) {
            let n = stage.n + 1;
            self.boundaries.push(StageBoundary { turn, n });
            self.start_stage()
        } else {
            let msg = format!("stage {} ended in a losing subgame position", stage.index);
            self.failures.push((turn, msg));
            Ok(())
        }
    }

    fn start_stage(&mut self) -> Result<()> {
        let b = &self.own;
        let n = (0..).find(|&v| !b.is_covered(v)).expect("finitely many covered vertices");
        let g = green_graph(b);
        let side = match two_coloring(&g) {
            Ok(side) => side,
            Err(cycle) => {
                self.failures.push((b.turn(), format!("odd green cycle {cycle:?} at stage start")));
                self.stage = None;
                return Ok(());
            }
        };
        let root = (0..b.window()).find(|&v| b.is_covered(v)).expect("some green edge");
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut seen = vec![false; b.window() as usize];
        seen[root as usize] = true;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            if side[v as usize] == side[root as usize] {
                first.push(v);
            } else {
                second.push(v);
            }
            for &w in b.green_neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    q.push_back(w);
                }
            }
        }
        first.sort_unstable();
        second.sort_unstable();
        if (0..b.window()).any(|v| b.is_covered(v) && !seen[v as usize]) {
            self.failures.push((b.turn(), "green graph disconnected at stage start".into()));
        }
        let red_joined = |part: &[Vertex]| part.iter().all(|&p| b.color_of(n, p) == Color::Red);
        let (rf, rs) = (red_joined(&first), red_joined(&second));
        let s = rf as usize + rs as usize;
        let (x_part, y_part) = if s == 1 && rs { (second, first) } else { (first, second) };
        let fresh = b.fresh_vertices_excluding(s, &[n])?;
        let (k, l) = (fresh.first().copied(), fresh.get(1).copied());

        let mut roles = HashMap::new();
        roles.insert(n, N);
        if let Some(k) = k {
            roles.insert(k, K);
        }
        if let Some(l) = l {
            roles.insert(l, L);
        }
        for &v in &x_part {
            roles.insert(v, X);
        }
        for &v in &y_part {
            roles.insert(v, Y);
        }
        let spec = &self.specs[s];
        let mut stage = Stage {
            index: self.next_index,
            n,
            s,
            k,
            l,
            x_part,
            y_part,
            roles,
            universe: spec.universe.clone(),
            colors: Vec::new(),
            history: Vec::new(),
        };
        stage.colors = (0..stage.universe.len())
            .map(|i| if stage.universe[i] == Pair::new(X, Y) { Color::Green } else { stage.abstract_color(b, i) })
            .collect();
        if stage.colors != spec.initial {
            self.failures.push((b.turn(), format!("stage {} did not open at the subgame start", stage.index)));
        }
        self.next_index += 1;
        self.stage = Some(stage);
        Ok(())
    }

    fn bipartite_after(board: &Board, e: Pair) -> std::result::Result<(), Witness> {
        // Before the move the green graph was bipartite; the new edge makes
        // an odd cycle iff its ends were joined by an even green path.
        let mut dist: HashMap<Vertex, usize> = HashMap::from([(e.u(), 0)]);
        let mut q = VecDeque::from([e.u()]);
        while let Some(x) = q.pop_front() {
            for &y in board.green_neighbors(x) {
                if Pair::new(x, y) == e || dist.contains_key(&y) {
                    continue;
                }
                let dy = dist[&x] + 1;
                if y == e.v() && dy.is_multiple_of(2) {
                    return Err(Witness::Edges(vec![e]));
                }
                dist.insert(y, dy);
                q.push_back(y);
            }
        }
        Ok(())
    }

    fn bipartite_full(board: &Board) -> std::result::Result<(), Witness> {
        two_coloring(&green_graph(board)).map(|_| ()).map_err(Witness::Vertices)
    }

    /// Conditions holding at a stage boundary with bound `n`: the green graph
    /// is connected and bipartite, every pair of its vertices is colored, and
    /// it covers every vertex below `n`.
    pub fn boundary_conditions(board: &Board, n: Vertex) -> std::result::Result<(), Witness> {
        Self::bipartite_full(board)?;
        let covered: Vec<Vertex> = (0..board.window()).filter(|&v| board.is_covered(v)).collect();
        if let Some(v) = (0..n).find(|&v| !board.is_covered(v)) {
            return Err(Witness::Vertices(vec![v]));
        }
        let g = green_graph(board);
        if let Some(&root) = covered.first() {
            let dist = g.distances_from(root);
            if let Some(&v) = covered.iter().find(|&&v| dist[v as usize] == usize::MAX) {
                return Err(Witness::Vertices(vec![root, v]));
            }
        }
        for (i, &a) in covered.iter().enumerate() {
            for &b in &covered[i + 1..] {
                if board.color_of(a, b) == Color::White {
                    return Err(Witness::Edges(vec![Pair::new(a, b)]));
                }
            }
        }
        Ok(())
    }

    fn boundary_check(&self, board: &Board) -> std::result::Result<(), Witness> {
        match self.boundaries.last() {
            Some(bd) if bd.turn == board.turn() => Self::boundary_conditions(board, bd.n),
            _ => Ok(()),
        }
    }

    fn subgame_check(&self) -> std::result::Result<(), Witness> {
        match self.failures.first() {
            None => Ok(()),
            Some((turn, msg)) => Err(Witness::Note(format!("turn {turn}: {msg}"))),
        }
    }
}

impl HiderStrategy for BipartiteHider {
    fn id(&self) -> String {
        match self.tau2 {
            Tau2Source::Appendix => "bipartite".into(),
            Tau2Source::Solved => "bipartite:solved".into(),
        }
    }

    fn property(&self) -> Option<PropertyId> {
        Some(PropertyId::Bipartite)
    }

    fn respond(&mut self, board: &Board, e: Pair) -> Result<Color> {
        self.catch_up(board)?;
        let Some(stage) = &self.stage else {
            return Ok(if board.turn() == 0 { Color::Green } else { Color::Red });
        };
        let (i, is_form) = match stage.target(e) {
            Target::Off => return Ok(Color::Red),
            Target::Direct(i) => (i, false),
            Target::Form(i) => (i, true),
        };
        if stage.colors[i] != Color::White {
            return Ok(Color::Red);
        }
        if is_form && stage.form_edges(i).iter().any(|&f| f != e && board.color(f) == Color::White) {
            return Ok(Color::Red);
        }
        Ok(self.policies[stage.s].reply(&stage.colors, &stage.history, i))
    }

    fn observe(&mut self, board: &Board) -> Result<()> {
        self.catch_up(board)
    }

    fn monitor_names(&self) -> Vec<&'static str> {
        vec!["green-bipartite", "stage-boundary", "subgame-progress"]
    }

    fn monitor(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        r.push("green-bipartite", Self::bipartite_full(board));
        r.push("stage-boundary", self.boundary_check(board));
        r.push("subgame-progress", self.subgame_check());
        r
    }

    fn monitor_move(&self, board: &Board) -> MonitorReport {
        let mut r = MonitorReport::new(board.turn());
        let outcome = match board.last_move() {
            Some((e, Color::Green)) => Self::bipartite_after(board, e),
            _ => Ok(()),
        };
        r.push("green-bipartite", outcome);
        r.push("stage-boundary", self.boundary_check(board));
        r.push("subgame-progress", self.subgame_check());
        r
    }

    fn stage(&self) -> Option<StageState> {
        self.stage.as_ref().map(|s| StageState {
            index: s.index,
            guard: format!("conditions hold for n = {} (subgame {})", s.n + 1, s.s),
            reserved: s.k.into_iter().chain(s.l).collect(),
        })
    }
}

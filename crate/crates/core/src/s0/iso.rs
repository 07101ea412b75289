//! Graph isomorphism for small graphs: colour refinement followed by
//! backtracking over vertices of equal refined colour.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::board::{Color, Pair};
use crate::error::{Error, Result};

use super::{template_edge, BitString, ColoredGraph, Role};

struct Adj {
    n: usize,
    rows: Vec<Vec<bool>>,
}

impl Adj {
    fn new(n: usize, edges: &[Pair]) -> Adj {
        let mut rows = vec![vec![false; n]; n];
        for e in edges {
            let (u, v) = (e.u() as usize, e.v() as usize);
            assert!(v < n, "{e} outside {n} vertices");
            rows[u][v] = true;
            rows[v][u] = true;
        }
        Adj { n, rows }
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.rows[v][w])
    }
}

/// Stable colour refinement run on both graphs at once so classes compare.
fn refine(a: &Adj, b: &Adj) -> (Vec<usize>, Vec<usize>) {
    let graphs = [a, b];
    let mut colors: Vec<Vec<usize>> =
        graphs.iter().map(|g| (0..g.n).map(|v| g.neighbors(v).count()).collect()).collect();
    let mut classes = 0;
    loop {
        let mut sigs: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
        for (g, c) in graphs.iter().zip(&colors) {
            sigs.push(
                (0..g.n)
                    .map(|v| {
                        let mut around: Vec<usize> = g.neighbors(v).map(|w| c[w]).collect();
                        around.sort_unstable();
                        (c[v], around)
                    })
                    .collect(),
            );
        }
        let mut ids = BTreeMap::new();
        for s in sigs.iter().flatten() {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        colors = sigs.iter().map(|gs| gs.iter().map(|s| ids[s]).collect()).collect();
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let b_colors = colors.pop().expect("two graphs");
    (colors.pop().expect("two graphs"), b_colors)
}

struct Search<'a> {
    a: &'a Adj,
    b: &'a Adj,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    found: usize,
    limit: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) {
        if self.found >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found += 1;
            return;
        }
        let v = self.order[depth];
        for w in 0..self.b.n {
            if self.used[w] || self.cb[w] != self.ca[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| self.a.rows[u][v] == self.b.rows[self.map[u]][w]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            self.extend(depth + 1);
            self.used[w] = false;
        }
    }
}

/// Counts isomorphisms from `a` to `b` on `n` vertices, stopping at `limit`.
fn count_isomorphisms(n: usize, a: &[Pair], b: &[Pair], limit: usize) -> usize {
    if a.len() != b.len() {
        return 0;
    }
    let (ga, gb) = (Adj::new(n, a), Adj::new(n, b));
    let (ca, cb) = refine(&ga, &gb);
    let histogram = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&ca) != histogram(&cb) {
        return 0;
    }
    // Rare classes first, then neighbours of placed vertices.
    let mut size = BTreeMap::new();
    for &c in &ca {
        *size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().filter(|&&u| ga.rows[u][v]).count();
                (size[&ca[v]], std::cmp::Reverse(linked), v)
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut s = Search { a: &ga, b: &gb, ca, cb, order, map: vec![0; n], used: vec![false; n], found: 0, limit };
    s.extend(0);
    s.found
}

pub fn graph_isomorphic(n: usize, a: &[Pair], b: &[Pair]) -> bool {
    count_isomorphisms(n, a, b, 1) > 0
}

/// Number of automorphisms of the graph, capped at `limit`.
pub fn automorphism_count(n: usize, edges: &[Pair], limit: usize) -> usize {
    count_isomorphisms(n, edges, edges, limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rigidity {
    NonIsomorphic,
    Isomorphic,
}

/// Compares the green graph of the truncated template (alternating `g`, all
/// `Q` edges red) with the same graph after flipping one determined edge.
/// With no flip the template is compared with itself.
pub fn rigidity_check(m: u32, flip: Option<Pair>) -> Result<Rigidity> {
    if m == 0 {
        return Err(Error::Invalid("truncation needs at least one x vertex".into()));
    }
    let base = ColoredGraph::template(&BitString::alternating(m as usize), [Color::Red, Color::Red]);
    let mut other = base.clone();
    if let Some(e) = flip {
        if e.v() >= base.vertex_count() {
            return Err(Error::Invalid(format!("{e} outside the truncation m = {m}")));
        }
        if template_edge(Role::of(e.u()), Role::of(e.v())).is_none() {
            return Err(Error::Invalid(format!("{e} is a free edge of the template")));
        }
        other.set(e, base.color(e).flip());
    }
    let n = base.vertex_count() as usize;
    Ok(if graph_isomorphic(n, &base.green_edges(), &other.green_edges()) {
        Rigidity::Isomorphic
    } else {
        Rigidity::NonIsomorphic
    })
}

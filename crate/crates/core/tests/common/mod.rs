//! Independent reference implementations used as test oracles. Everything
//! here works on a dense adjacency matrix and shares no code with the
//! library.

#![allow(dead_code)]

use elusive::{Color, Pair, Vertex};

pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Pair>) -> Dense {
        let mut adj = vec![vec![false; n]; n];
        for e in edges {
            let (u, v) = (e.u() as usize, e.v() as usize);
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Dense { n, adj }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Breadth-first distances from `s`; `usize::MAX` when unreachable.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..self.n {
                if self.adj[v][w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn connected(&self) -> bool {
        self.n <= 1 || self.distances(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn diameter_at_most(&self, d: usize) -> bool {
        (0..self.n).all(|s| self.distances(s).iter().all(|&x| x <= d))
    }

    pub fn bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if !self.adj[v][w] {
                        continue;
                    }
                    match side[w] {
                        None => {
                            side[w] = side[v].map(|b| !b);
                            stack.push(w);
                        }
                        Some(b) if Some(b) == side[v] => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Whether some simple cycle has exactly `k` vertices.
    pub fn has_cycle_of_length(&self, k: usize) -> bool {
        fn extend(g: &Dense, start: usize, v: usize, len: usize, k: usize, on: &mut Vec<bool>) -> bool {
            if len == k {
                return g.adj[v][start];
            }
            for w in start + 1..g.n {
                if g.adj[v][w] && !on[w] {
                    on[w] = true;
                    let found = extend(g, start, w, len + 1, k, on);
                    on[w] = false;
                    if found {
                        return true;
                    }
                }
            }
            false
        }
        // Every cycle is found from its least vertex.
        (0..self.n).any(|s| {
            let mut on = vec![false; self.n];
            on[s] = true;
            extend(self, s, s, 1, k, &mut on)
        })
    }

    /// Forest check by edge count per component.
    pub fn is_forest(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut total_trees = 0;
        for s in 0..self.n {
            if !seen[s] {
                total_trees += 1;
                let dist = self.distances(s);
                for v in 0..self.n {
                    if dist[v] != usize::MAX {
                        seen[v] = true;
                    }
                }
            }
        }
        self.edge_count() + total_trees == self.n
    }
}

/// Largest set of pairwise disjoint edges, by trying every subset.
pub fn brute_matching(edges: &[Pair]) -> usize {
    let m = edges.len();
    assert!(m <= 20, "subset brute force");
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used: Vec<Vertex> = Vec::new();
        let ok = (0..m).filter(|&i| mask >> i & 1 == 1).all(|i| {
            let e = edges[i];
            if used.contains(&e.u()) || used.contains(&e.v()) {
                false
            } else {
                used.extend([e.u(), e.v()]);
                true
            }
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Property names understood by [`holds`].
pub const PROPERTIES: &[&str] = &[
    "connected",
    "bipartite",
    "cycle:3",
    "cycle:4",
    "girth:4",
    "diameter:1",
    "diameter:2",
    "degree:2",
    "degree:3",
    "indep:2",
    "no-isolated",
    "nonempty",
    "trivial",
];

pub fn holds(property: &str, g: &Dense) -> bool {
    let (name, arg) = property.split_once(':').map_or((property, 0), |(a, b)| (a, b.parse().unwrap()));
    match name {
        "connected" => g.connected(),
        "bipartite" => g.bipartite(),
        "cycle" => g.has_cycle_of_length(arg),
        "girth" => (3..=arg).any(|k| g.has_cycle_of_length(k)),
        "diameter" => g.diameter_at_most(arg),
        "degree" => g.max_degree() >= arg,
        "indep" => {
            let edges: Vec<Pair> = (0..g.n)
                .flat_map(|u| (u + 1..g.n).map(move |v| (u, v)))
                .filter(|&(u, v)| g.adj[u][v])
                .map(|(u, v)| Pair::new(u as Vertex, v as Vertex))
                .collect();
            brute_matching(&edges) >= arg
        }
        "no-isolated" => (0..g.n).all(|v| g.degree(v) > 0),
        "nonempty" => g.edge_count() > 0,
        "trivial" => true,
        _ => panic!("unknown property {property}"),
    }
}

pub fn all_pairs(n: u32) -> Vec<Pair> {
    (1..n).flat_map(|v| (0..v).map(move |u| Pair::new(u, v))).collect()
}

/// Status of `property` on `K_n` given a partial coloring, by trying every
/// completion of the white edges: `Some(true)` if all completions have it,
/// `Some(false)` if none do, `None` otherwise.
pub fn brute_decide(property: &str, n: u32, color: impl Fn(Pair) -> Color) -> Option<bool> {
    let pairs = all_pairs(n);
    let green: Vec<Pair> = pairs.iter().copied().filter(|&e| color(e) == Color::Green).collect();
    let white: Vec<Pair> = pairs.iter().copied().filter(|&e| color(e) == Color::White).collect();
    assert!(white.len() <= 12, "completion brute force");
    let (mut any_in, mut any_out) = (false, false);
    for mask in 0u32..(1 << white.len()) {
        let extra = (0..white.len()).filter(|&i| mask >> i & 1 == 1).map(|i| white[i]);
        let g = Dense::new(n as usize, green.iter().copied().chain(extra));
        if holds(property, &g) {
            any_in = true;
        } else {
            any_out = true;
        }
        if any_in && any_out {
            return None;
        }
    }
    Some(any_in)
}

/// Decision-tree complexity of `property` on `K_n`: the number of queries
/// an optimal adaptive Seeker needs in the worst case. Elusive exactly when
/// this equals the number of pairs.
pub fn decision_tree_depth(property: &str, n: u32) -> usize {
    use std::collections::HashMap;
    let pairs = all_pairs(n);
    fn go(
        property: &str,
        n: u32,
        pairs: &[Pair],
        colors: &mut Vec<Color>,
        memo: &mut HashMap<Vec<Color>, usize>,
    ) -> usize {
        if let Some(&d) = memo.get(colors) {
            return d;
        }
        let decided = brute_decide(property, n, |e| colors[pairs.iter().position(|&p| p == e).unwrap()]).is_some();
        let d = if decided {
            0
        } else {
            let mut best = usize::MAX;
            for i in 0..pairs.len() {
                if colors[i] != Color::White {
                    continue;
                }
                let mut worst = 0;
                for c in [Color::Green, Color::Red] {
                    colors[i] = c;
                    worst = worst.max(go(property, n, pairs, colors, memo));
                    colors[i] = Color::White;
                }
                best = best.min(1 + worst);
            }
            best
        };
        memo.insert(colors.clone(), d);
        d
    }
    let mut colors = vec![Color::White; pairs.len()];
    go(property, n, &pairs, &mut colors, &mut HashMap::new())
}

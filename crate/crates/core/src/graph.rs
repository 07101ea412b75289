//! Plain graph algorithms over edge sets.

use std::collections::{HashMap, VecDeque};

use crate::board::{Pair, Vertex};

/// Adjacency lists over vertices `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn with_vertices(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges<I: IntoIterator<Item = Pair>>(edges: I) -> Graph {
        let mut g = Graph::default();
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    pub fn add_edge(&mut self, e: Pair) {
        let need = e.v() as usize + 1;
        if self.adj.len() < need {
            self.adj.resize(need, Vec::new());
        }
        self.adj[e.u() as usize].push(e.v());
        self.adj[e.v() as usize].push(e.u());
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(v as usize).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        let (x, y) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors(x).contains(&y)
    }

    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&w| (u as Vertex) < w).map(move |&w| Pair::new(u as Vertex, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices with at least one edge.
    pub fn support(&self) -> Vec<Vertex> {
        (0..self.adj.len() as Vertex).filter(|&v| self.degree(v) > 0).collect()
    }

    /// BFS distances from `s`, `usize::MAX` for unreachable vertices.
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len().max(s as usize + 1)];
        dist[s as usize] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// Whether `a` and `b` are joined by a path of at most `d` edges.
    pub fn within_distance(&self, a: Vertex, b: Vertex, d: usize) -> bool {
        within_distance_by(|v| self.neighbors(v), a, b, d)
    }
}

/// Bidirectional search expanding the smaller frontier, so the cost stays
/// near the sparse side of the graph. `neighbors` must return an empty
/// slice for vertices it does not know.
pub fn within_distance_by<'a, F>(neighbors: F, a: Vertex, b: Vertex, d: usize) -> bool
where
    F: Fn(Vertex) -> &'a [Vertex],
{
    if a == b {
        return true;
    }
    // side: 1 reached from a, 2 reached from b
    let mut side: HashMap<Vertex, u8> = HashMap::new();
    side.insert(a, 1);
    side.insert(b, 2);
    let mut fa = vec![a];
    let mut fb = vec![b];
    let mut used = 0;
    while used < d && !fa.is_empty() && !fb.is_empty() {
        let work_a: usize = fa.iter().map(|&v| neighbors(v).len()).sum();
        let work_b: usize = fb.iter().map(|&v| neighbors(v).len()).sum();
        let (front, mine, theirs) = if work_a <= work_b { (&mut fa, 1u8, 2u8) } else { (&mut fb, 2u8, 1u8) };
        let mut next = Vec::new();
        for &x in front.iter() {
            for &y in neighbors(x) {
                match side.get(&y) {
                    Some(&s) if s == theirs => return true,
                    Some(_) => {}
                    None => {
                        side.insert(y, mine);
                        next.push(y);
                    }
                }
            }
        }
        *front = next;
        used += 1;
    }
    false
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Partition of `support` into the components of `edges`. Components are
/// sorted internally and listed by least vertex.
pub fn components(edges: &[Pair], support: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut verts: Vec<Vertex> = support.to_vec();
    verts.extend(edges.iter().flat_map(|e| e.ends()));
    verts.sort_unstable();
    verts.dedup();
    let pos = |v: Vertex| verts.binary_search(&v).unwrap();
    let mut uf = UnionFind::new(verts.len());
    for e in edges {
        uf.union(pos(e.u()), pos(e.v()));
    }
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    let mut slot = vec![usize::MAX; verts.len()];
    for (i, &v) in verts.iter().enumerate() {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
}

/// Proper 2-coloring of the graph or an odd cycle (as a vertex sequence).
pub fn two_coloring(g: &Graph) -> Result<Vec<Option<bool>>, Vec<Vertex>> {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![u32::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n as Vertex {
        if side[root as usize].is_some() || g.degree(root) == 0 {
            continue;
        }
        side[root as usize] = Some(false);
        let mut q = VecDeque::from([root]);
        while let Some(x) = q.pop_front() {
            let sx = side[x as usize].unwrap();
            for &y in g.neighbors(x) {
                match side[y as usize] {
                    None => {
                        side[y as usize] = Some(!sx);
                        parent[y as usize] = x;
                        depth[y as usize] = depth[x as usize] + 1;
                        q.push_back(y);
                    }
                    Some(sy) if sy == sx => {
                        return Err(tree_cycle(x, y, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side)
}

fn tree_cycle(a: Vertex, b: Vertex, parent: &[u32], depth: &[usize]) -> Vec<Vertex> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x as usize] > depth[y as usize] {
        x = parent[x as usize];
        left.push(x);
    }
    while depth[y as usize] > depth[x as usize] {
        y = parent[y as usize];
        right.push(y);
    }
    while x != y {
        x = parent[x as usize];
        y = parent[y as usize];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// An odd cycle of `edges`, if one exists.
pub fn odd_cycle(edges: &[Pair]) -> Option<Vec<Vertex>> {
    two_coloring(&Graph::from_edges(edges.iter().copied())).err()
}

pub fn odd_cycle_exists(edges: &[Pair]) -> bool {
    odd_cycle(edges).is_some()
}

pub fn shortest_path_len(edges: &[Pair], a: Vertex, b: Vertex) -> Option<usize> {
    if a == b {
        return Some(0);
    }
    let g = Graph::from_edges(edges.iter().copied());
    let d = g.distances_from(a);
    d.get(b as usize).copied().filter(|&x| x != usize::MAX)
}

/// Whether some simple cycle has exactly `k` edges.
pub fn cycle_of_length_exists(edges: &[Pair], k: usize) -> bool {
    graph_has_cycle_of_length(&Graph::from_edges(edges.iter().copied()), k)
}

/// Exact search; each cycle is rooted at its least vertex.
pub fn graph_has_cycle_of_length(g: &Graph, k: usize) -> bool {
    assert!(k >= 3, "cycles have at least three edges");
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for s in 0..n as Vertex {
        if g.degree(s) < 2 {
            continue;
        }
        on_path[s as usize] = true;
        let found = g.neighbors(s).iter().any(|&w| {
            w > s && {
                on_path[w as usize] = true;
                let r = extend_to(g, s, w, k - 1, s, &mut on_path);
                on_path[w as usize] = false;
                r
            }
        });
        on_path[s as usize] = false;
        if found {
            return true;
        }
    }
    false
}

// Is there a simple path from `cur` to `target` with exactly `left` edges,
// through unvisited vertices greater than `floor`?
fn extend_to(g: &Graph, floor: Vertex, cur: Vertex, left: usize, target: Vertex, on_path: &mut [bool]) -> bool {
    if left == 1 {
        return g.neighbors(cur).contains(&target);
    }
    for &w in g.neighbors(cur) {
        if w > floor && !on_path[w as usize] {
            on_path[w as usize] = true;
            let r = extend_to(g, floor, w, left - 1, target, on_path);
            on_path[w as usize] = false;
            if r {
                return true;
            }
        }
    }
    false
}

/// Whether a simple path with exactly `len` edges joins `a` and `b`,
/// ignoring the edge `skip` if given.
pub fn path_of_length_exists(g: &Graph, a: Vertex, b: Vertex, len: usize, skip: Option<Pair>) -> bool {
    fn go(g: &Graph, cur: Vertex, b: Vertex, left: usize, skip: Option<Pair>, on_path: &mut [bool]) -> bool {
        for &w in g.neighbors(cur) {
            if skip == Pair::try_new(cur, w) || on_path[w as usize] {
                continue;
            }
            if left == 1 {
                if w == b {
                    return true;
                }
                continue;
            }
            if w == b {
                continue;
            }
            on_path[w as usize] = true;
            let r = go(g, w, b, left - 1, skip, on_path);
            on_path[w as usize] = false;
            if r {
                return true;
            }
        }
        false
    }
    if a == b || len == 0 {
        return a == b && len == 0;
    }
    let n = g.vertex_count().max(a as usize + 1).max(b as usize + 1);
    let mut on_path = vec![false; n];
    on_path[a as usize] = true;
    go(g, a, b, len, skip, &mut on_path)
}

/// Whether every pair of vertices in `0..n` is within distance `d`, using
/// bitset rows. Returns a violating pair otherwise.
pub fn all_pairs_within(rows: &[Vec<u64>], d: usize) -> Result<(), (Vertex, Vertex)> {
    let n = rows.len();
    let words = n.div_ceil(64);
    for s in 0..n {
        let mut seen = vec![0u64; words];
        seen[s / 64] |= 1 << (s % 64);
        let mut frontier = seen.clone();
        for _ in 0..d {
            let mut next = vec![0u64; words];
            for (w, &bits) in frontier.iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let x = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (acc, r) in next.iter_mut().zip(&rows[x]) {
                        *acc |= r;
                    }
                }
            }
            for (nx, sn) in next.iter_mut().zip(seen.iter_mut()) {
                *nx &= !*sn;
                *sn |= *nx;
            }
            frontier = next;
        }
        for t in 0..n {
            if seen[t / 64] >> (t % 64) & 1 == 0 {
                return Err((s as Vertex, t as Vertex));
            }
        }
    }
    Ok(())
}

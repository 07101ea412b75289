//! Library answers checked against brute-force reference implementations.

mod common;

use common::{all_pairs, brute_decide, brute_matching, decision_tree_depth, Dense, PROPERTIES};
use elusive::graph::{graph_has_cycle_of_length, two_coloring, Graph};
use elusive::matching::{max_matching, max_matching_size};
use elusive::solver::{classical_elusiveness, classical_elusiveness_with_order, Elusiveness};
use elusive::{decide, Board, Color, DecisionStatus, Pair, PropertyId, Semantics};
use proptest::prelude::*;

fn coloring(n: u32) -> impl Strategy<Value = Vec<Color>> {
    let m = all_pairs(n).len();
    prop::collection::vec(prop_oneof![Just(Color::White), Just(Color::Green), Just(Color::Red)], m)
}

fn board_of(n: u32, colors: &[Color]) -> Board {
    let mut b = Board::new();
    b.grow_to(n);
    for (e, &c) in all_pairs(n).into_iter().zip(colors) {
        if c != Color::White {
            b.play(e, c).unwrap();
        }
    }
    b
}

fn expected(oracle: Option<bool>) -> DecisionStatus {
    match oracle {
        Some(true) => DecisionStatus::DecidedIn,
        Some(false) => DecisionStatus::DecidedOut,
        None => DecisionStatus::Undecided,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn finite_decide_matches_completion_oracle(
        (n, colors) in (2u32..=5).prop_flat_map(|n| (Just(n), coloring(n))),
        which in 0..PROPERTIES.len(),
    ) {
        let name = PROPERTIES[which];
        let p: PropertyId = name.parse().unwrap();
        let b = board_of(n, &colors);
        let got = decide(p, &b, Semantics::FiniteUniverse(n)).unwrap();
        let want = expected(brute_decide(name, n, |e| b.color(e)));
        prop_assert_eq!(got, want, "{} on K{} with {:?}", name, n, colors);
    }

    #[test]
    fn two_coloring_matches_oracle(n in 1usize..=12, edges in prop::collection::vec((0u32..12, 0u32..12), 0..20)) {
        let edges: Vec<Pair> = edges.into_iter().filter_map(|(a, b)| Pair::try_new(a % n as u32, b % n as u32)).collect();
        let mut g = Graph::with_vertices(n);
        for &e in &edges {
            g.add_edge(e);
        }
        let dense = Dense::new(n, edges.iter().copied());
        match two_coloring(&g) {
            Ok(side) => {
                prop_assert!(dense.bipartite());
                for e in &edges {
                    prop_assert_ne!(side[e.u() as usize], side[e.v() as usize]);
                }
            }
            Err(cycle) => {
                prop_assert!(!dense.bipartite());
                prop_assert!(cycle.len() % 2 == 1);
                for i in 0..cycle.len() {
                    let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    prop_assert!(dense.adj[a as usize][b as usize], "cycle uses {}-{}", a, b);
                }
            }
        }
    }

    #[test]
    fn cycle_search_matches_oracle(n in 3usize..=9, k in 3usize..=7, edges in prop::collection::vec((0u32..9, 0u32..9), 0..16)) {
        let edges: Vec<Pair> = edges.into_iter().filter_map(|(a, b)| Pair::try_new(a % n as u32, b % n as u32)).collect();
        let mut g = Graph::with_vertices(n);
        for &e in &edges {
            g.add_edge(e);
        }
        prop_assert_eq!(graph_has_cycle_of_length(&g, k), Dense::new(n, edges.iter().copied()).has_cycle_of_length(k));
    }

    #[test]
    fn matching_matches_brute_force(edges in prop::collection::vec((0u32..10, 0u32..10), 0..=8)) {
        let mut edges: Vec<Pair> = edges.into_iter().filter_map(|(a, b)| Pair::try_new(a, b)).collect();
        edges.sort();
        edges.dedup();
        let m = max_matching(&edges);
        prop_assert_eq!(m.len(), brute_matching(&edges));
        let mut used = std::collections::HashSet::new();
        for e in &m {
            prop_assert!(edges.contains(e));
            prop_assert!(used.insert(e.u()) && used.insert(e.v()));
        }
    }
}

#[test]
fn matching_on_every_small_subgraph_of_k5() {
    let pairs = all_pairs(5);
    let mut checked = 0;
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() > 8 {
            continue;
        }
        let edges: Vec<Pair> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        assert_eq!(max_matching_size(&edges), brute_matching(&edges), "{edges:?}");
        checked += 1;
    }
    assert_eq!(checked, 1024 - 11);
}

#[test]
fn nonempty_on_three_vertices_needs_every_query() {
    assert_eq!(decision_tree_depth("nonempty", 3), 3);
    assert_eq!(classical_elusiveness(PropertyId::Nonempty, 3).unwrap(), Elusiveness::Elusive);
}

#[test]
fn classical_answers_match_decision_trees() {
    for (name, n) in [("connected", 4), ("trivial", 4), ("nonempty", 4), ("degree:3", 4), ("bipartite", 4)] {
        let p: PropertyId = name.parse().unwrap();
        let depth = decision_tree_depth(name, n);
        let want = if depth == all_pairs(n).len() { Elusiveness::Elusive } else { Elusiveness::NotElusive };
        assert_eq!(classical_elusiveness(p, n).unwrap(), want, "{name} on K{n}");
    }
}

#[test]
fn connected_on_four_vertices_is_order_independent() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let mut order: Vec<usize> = (0..6).collect();
        order.shuffle(&mut rng);
        assert_eq!(
            classical_elusiveness_with_order(PropertyId::Connected, 4, Some(&order)).unwrap(),
            Elusiveness::Elusive
        );
    }
}

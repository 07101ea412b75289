//! The classical finite game on the complete graph `K_n`: Seeker wins when
//! the position decides the property while some edge is still white.

use serde::Serialize;

use crate::board::{Color, Pair};
use crate::error::Result;
use crate::graph::Graph;
use crate::properties::PropertyId;

use super::{solve_with_order, FiniteGameSpec, Winner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Elusiveness {
    Elusive,
    NotElusive,
}

fn decided(p: PropertyId, n: u32, universe: &[Pair], colors: &[Color]) -> bool {
    let mut green = Graph::with_vertices(n as usize);
    let mut open = Graph::with_vertices(n as usize);
    for (&e, &c) in universe.iter().zip(colors) {
        match c {
            Color::Green => {
                green.add_edge(e);
                open.add_edge(e);
            }
            Color::White => open.add_edge(e),
            Color::Red => {}
        }
    }
    // Whatever the direction of monotonicity, the property is decided
    // exactly when the two extreme completions agree.
    p.holds(&green, n) == p.holds(&open, n)
}

/// The game on `K_n` for property `p`.
pub fn classical_game(p: PropertyId, n: u32) -> Result<FiniteGameSpec> {
    let p = p.validate()?;
    let mut universe = Vec::new();
    for v in 1..n {
        for u in 0..v {
            universe.push(Pair::new(u, v));
        }
    }
    let m = universe.len();
    FiniteGameSpec::new(
        format!("classical {p} on K{n}"),
        universe,
        vec![Color::White; m],
        Box::new(move |u, c| decided(p, n, u, c)),
        Box::new(|_, c| !c.contains(&Color::White)),
    )
}

/// Elusive iff Hider can force Seeker to query every edge. Valid for
/// properties closed under adding edges or under removing them.
pub fn classical_elusiveness(p: PropertyId, n: u32) -> Result<Elusiveness> {
    classical_elusiveness_with_order(p, n, None)
}

/// As [`classical_elusiveness`] with Seeker's moves tried in `order`.
pub fn classical_elusiveness_with_order(p: PropertyId, n: u32, order: Option<&[usize]>) -> Result<Elusiveness> {
    let spec = classical_game(p, n)?;
    let default: Vec<usize> = (0..spec.universe.len()).collect();
    let v = solve_with_order(&spec, order.unwrap_or(&default))?;
    Ok(match v.winner {
        Winner::Hider => Elusiveness::Elusive,
        Winner::Seeker => Elusiveness::NotElusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(classical_elusiveness(PropertyId::Trivial, 3), Ok(Elusiveness::NotElusive));
        assert_eq!(classical_elusiveness(PropertyId::Nonempty, 3), Ok(Elusiveness::Elusive));
        assert_eq!(classical_elusiveness(PropertyId::Connected, 4), Ok(Elusiveness::Elusive));
    }

    #[test]
    fn too_many_vertices() {
        assert!(classical_elusiveness(PropertyId::Nonempty, 7).is_err());
    }
}

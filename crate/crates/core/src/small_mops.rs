//! Two-vertex total dominating sets of MOPs of order 5, 6 and 7, and the
//! walk that cuts a MOP into a piece of bounded order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::NearTriangulation;
use crate::oracle::{is_total_dominating, least_pair};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SmallMopError {
    #[error("expected order {expected}, found {found}")]
    BadOrder { expected: usize, found: usize },
    #[error("graph is not a MOP")]
    NotMop,
    #[error("vertex {0} is out of range")]
    NoSuchVertex(usize),
    #[error("{0}-{1} is not a boundary edge")]
    NotBoundaryEdge(usize, usize),
    #[error("order {n} is below 2 * {l}")]
    TooSmall { n: usize, l: usize },
    #[error("no qualifying pair exists")]
    NoPair,
}

/// A total dominating pair; the two vertices are adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Td2Set {
    pub pair: (usize, usize),
}

impl Td2Set {
    pub fn contains(&self, v: usize) -> bool {
        self.pair.0 == v || self.pair.1 == v
    }

    /// The member other than `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.pair.0 == v {
            self.pair.1
        } else {
            self.pair.0
        }
    }
}

fn check_mop(g: &NearTriangulation, order: usize) -> Result<(), SmallMopError> {
    if g.n() != order {
        return Err(SmallMopError::BadOrder { expected: order, found: g.n() });
    }
    if !g.is_mop() {
        return Err(SmallMopError::NotMop);
    }
    Ok(())
}

fn least_td2(g: &NearTriangulation, extra: impl Fn(usize, usize) -> bool) -> Result<Td2Set, SmallMopError> {
    least_pair(g.n(), |a, b| extra(a, b) && is_total_dominating(g, &[a, b]))
        .map(|pair| Td2Set { pair })
        .ok_or(SmallMopError::NoPair)
}

/// Least total dominating pair of an order-5 MOP containing `u`.
pub fn td2_pentagon(g: &NearTriangulation, u: usize) -> Result<Td2Set, SmallMopError> {
    check_mop(g, 5)?;
    if u >= g.n() {
        return Err(SmallMopError::NoSuchVertex(u));
    }
    least_td2(g, |a, b| a == u || b == u)
}

/// Least total dominating pair of an order-6 MOP holding exactly one end of
/// boundary edge `e`.
pub fn td2_hexagon(g: &NearTriangulation, e: (usize, usize)) -> Result<Td2Set, SmallMopError> {
    check_mop(g, 6)?;
    let (x, y) = e;
    if !g.is_boundary_edge(x, y) {
        return Err(SmallMopError::NotBoundaryEdge(x, y));
    }
    least_td2(g, |a, b| [a, b].iter().filter(|&&v| v == x || v == y).count() == 1)
}

/// Least total dominating pair of an order-7 MOP.
pub fn td2_heptagon(g: &NearTriangulation) -> Result<Td2Set, SmallMopError> {
    check_mop(g, 7)?;
    least_td2(g, |_, _| true)
}

/// Result of [`split_by_diagonal`]: `piece` is `g.side_of_chord(diagonal.0, diagonal.1)`.
#[derive(Clone, Debug)]
pub struct Split {
    pub diagonal: (usize, usize),
    pub piece: NearTriangulation,
}

/// Finds a diagonal cutting off a piece of order in `l+1 ..= 2l-1` that
/// avoids boundary edge `e`. Starting from the triangle on `e`, the walk
/// steps into the larger of the two pieces beyond the apex until its order
/// falls in range.
pub fn split_by_diagonal(g: &NearTriangulation, e: (usize, usize), l: usize) -> Result<Split, SmallMopError> {
    if !g.is_mop() {
        return Err(SmallMopError::NotMop);
    }
    if g.n() < 2 * l || l < 2 {
        return Err(SmallMopError::TooSmall { n: g.n(), l });
    }
    let (x0, y0) = g.orient_boundary_edge(e.0, e.1).ok_or(SmallMopError::NotBoundaryEdge(e.0, e.1))?;
    let h = g.h();
    let pos = |v: usize| g.outer_pos(v).unwrap();
    let arc = |a: usize, b: usize| (pos(b) + h - pos(a)) % h;
    // current piece: outer arc from y clockwise to x, closed by x y
    let (mut x, mut y) = (x0, y0);
    for _ in 0..h {
        let w = *g
            .neighbors(x)
            .iter()
            .find(|&&w| g.has_edge(y, w) && arc(y, w) > 0 && arc(y, w) < arc(y, x))
            .expect("every edge of a MOP piece bounds a triangle inside it");
        let near_x = arc(w, x) + 1;
        let near_y = arc(y, w) + 1;
        let (start, end, order) = if near_x > near_y { (w, x, near_x) } else { (y, w, near_y) };
        if (l + 1..=2 * l - 1).contains(&order) {
            let piece = g.side_of_chord(start, end).expect("walk produces diagonals");
            return Ok(Split { diagonal: (start, end), piece });
        }
        (x, y) = (end, start);
    }
    unreachable!("piece order strictly decreases along the walk")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fan, zigzag};
    use crate::generators::enumerate_mops;
    use crate::oracle::is_total_dominating;

    #[test]
    fn pentagon_fan() {
        let g = fan(5);
        // centre 0 with its least neighbor
        assert_eq!(td2_pentagon(&g, 0).unwrap().pair, (0, 1));
        // tip 1 is dominated only through its neighbors 0 and 2; brute force
        let tip = td2_pentagon(&g, 1).unwrap();
        assert_eq!(tip.pair, (0, 1));
        let all: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .filter(|&(a, b)| (a == 1 || b == 1) && is_total_dominating(&g, &[a, b]))
            .collect();
        assert_eq!(all, vec![(0, 1)]);
    }

    #[test]
    fn hexagon_fan_edges() {
        let g = fan(6);
        let at_centre = td2_hexagon(&g, (0, 1)).unwrap();
        assert!(at_centre.contains(0) && !at_centre.contains(1));
        let opposite = td2_hexagon(&g, (2, 3)).unwrap();
        assert!(opposite.contains(0) && (opposite.contains(2) ^ opposite.contains(3)));
        assert!(matches!(td2_hexagon(&g, (0, 3)), Err(SmallMopError::NotBoundaryEdge(0, 3))));
    }

    #[test]
    fn heptagon_snake() {
        let g = zigzag(7);
        let s = td2_heptagon(&g).unwrap();
        assert!(g.has_edge(s.pair.0, s.pair.1));
        assert!(is_total_dominating(&g, &[s.pair.0, s.pair.1]));
        assert_eq!(td2_heptagon(&fan(7)).unwrap().pair, (0, 1));
        assert_eq!(td2_heptagon(&fan(6)), Err(SmallMopError::BadOrder { expected: 7, found: 6 }));
    }

    #[test]
    fn all_small_lemmas_hold() {
        for g in enumerate_mops(5, false).unwrap() {
            for u in 0..5 {
                let s = td2_pentagon(&g, u).unwrap();
                assert!(s.contains(u) && g.has_edge(s.pair.0, s.pair.1));
            }
        }
        for g in enumerate_mops(6, false).unwrap() {
            for i in 0..6 {
                let e = (i, (i + 1) % 6);
                let s = td2_hexagon(&g, e).unwrap();
                assert_eq!([e.0, e.1].iter().filter(|&&v| s.contains(v)).count(), 1);
            }
        }
        for g in enumerate_mops(7, false).unwrap() {
            td2_heptagon(&g).unwrap();
        }
    }

    #[test]
    fn split_orders() {
        for (n, l) in [(8, 4), (10, 5), (13, 4), (15, 5)] {
            let graphs: Vec<NearTriangulation> = if n <= 10 {
                enumerate_mops(n, false).unwrap()
            } else {
                (0..300).map(|s| crate::generators::random_mop(n, s).unwrap()).collect()
            };
            for g in &graphs {
                for i in 0..n {
                    let e = (i, (i + 1) % n);
                    let s = split_by_diagonal(g, e, l).unwrap();
                    let r = s.piece.n();
                    assert!((l + 1..=2 * l - 1).contains(&r), "n={n} l={l} r={r}");
                    assert!(s.piece.is_mop());
                    let other = g.side_of_chord(s.diagonal.1, s.diagonal.0).unwrap();
                    assert_eq!(r + other.n(), n + 2);
                    // the piece avoids e
                    let ids: Vec<usize> = s.piece.labels().iter().map(|&l| g.id_of_label(l).unwrap()).collect();
                    assert!(!(ids.contains(&e.0) && ids.contains(&e.1)));
                }
            }
        }
        assert!(matches!(split_by_diagonal(&fan(7), (0, 1), 4), Err(SmallMopError::TooSmall { .. })));
    }

    #[test]
    fn split_of_fan_at_tip() {
        let g = fan(8);
        let s = split_by_diagonal(&g, (7, 0), 4).unwrap();
        // triangle on 7-0 has apex 6 and the side 0..6 already has order 7
        assert_eq!(s.diagonal, (0, 6));
        assert_eq!(s.piece.n(), 7);
        // from the far tip the walk must step twice: 0..7 (8), then 0..6 (7)
        let s = split_by_diagonal(&g, (0, 1), 4).unwrap();
        assert_eq!((s.diagonal, s.piece.n()), ((2, 0), 7));
    }
}

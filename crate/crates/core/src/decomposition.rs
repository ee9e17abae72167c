//! Reducible edges, the regions cut out by the boundary subgraph, and
//! terminal polygons of irreducible near-triangulations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::NearTriangulation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("near-triangulation is not irreducible")]
    NotIrreducible,
}

/// The three mutually exclusive shapes of a near-triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Mop,
    Reducible((usize, usize)),
    Irreducible,
}

/// A bounded face of the subgraph induced by the boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// Corners in clockwise order, starting at the one earliest on the outer cycle.
    pub polygon: Vec<usize>,
    /// Interior vertices of the host lying inside.
    pub interior: Vec<usize>,
}

impl Region {
    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }
}

/// A terminal polygon `v_1 .. v_k` (clockwise) with the pieces hanging off
/// its sides. Side `j` joins `polygon[j]` to `polygon[(j + 1) % k]`; the
/// flank on side `j` is the piece across that side from the polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalDecomposition {
    pub polygon: Vec<usize>,
    pub sides: Vec<(usize, usize)>,
    pub flank_orders: Vec<usize>,
    pub flank_is_mop: Vec<bool>,
    /// The one side whose flank may hold interior vertices; always the last
    /// side when present.
    pub special_index: Option<usize>,
    /// Interior vertices inside the polygon.
    pub polygon_interior: Vec<usize>,
}

/// Least boundary edge `(min, max)` whose inner triangle has an interior apex.
pub fn find_reducible_edge(g: &NearTriangulation) -> Option<(usize, usize)> {
    let h = g.h();
    (0..h)
        .filter_map(|i| {
            let (a, b) = (g.outer()[i], g.outer()[(i + 1) % h]);
            (!g.is_outer(g.succ(a, b))).then_some((a.min(b), a.max(b)))
        })
        .min()
}

pub fn shape(g: &NearTriangulation) -> Shape {
    if g.is_mop() {
        Shape::Mop
    } else if let Some(e) = find_reducible_edge(g) {
        Shape::Reducible(e)
    } else {
        Shape::Irreducible
    }
}

/// Bounded faces of the boundary subgraph, each with its interior census.
pub fn boundary_subgraph_regions(g: &NearTriangulation) -> Vec<Region> {
    let n = g.n();
    let restricted: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if g.is_outer(v) {
                g.neighbors(v).iter().copied().filter(|&u| g.is_outer(u)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let rsucc = |v: usize, u: usize| -> usize {
        let r = &restricted[v];
        let i = r.iter().position(|&x| x == u).unwrap();
        r[(i + 1) % r.len()]
    };
    let mut used = std::collections::HashSet::new();
    let (o0, o1) = (g.outer()[0], g.outer()[1]);
    let mut regions = Vec::new();
    for &v in g.outer() {
        for &u in &restricted[v] {
            if used.contains(&(v, u)) {
                continue;
            }
            let mut face = Vec::new();
            let mut seeds = Vec::new();
            let mut is_outer_face = false;
            let (mut a, mut b) = (v, u);
            while used.insert((a, b)) {
                if (a, b) == (o0, o1) {
                    is_outer_face = true;
                }
                face.push(a);
                let c = rsucc(b, a);
                // full-rotation neighbors of b strictly between a and c
                let rot = g.neighbors(b);
                let ia = rot.iter().position(|&x| x == a).unwrap();
                let mut k = (ia + 1) % rot.len();
                while rot[k] != c {
                    seeds.push(rot[k]);
                    k = (k + 1) % rot.len();
                }
                (a, b) = (b, c);
            }
            if is_outer_face {
                continue;
            }
            face.sort_by_key(|&x| g.outer_pos(x).unwrap());
            regions.push(Region { polygon: face, interior: interior_closure(g, &seeds) });
        }
    }
    regions.sort_by_key(|r| r.polygon.iter().map(|&x| g.outer_pos(x).unwrap()).collect::<Vec<_>>());
    regions
}

fn interior_closure(g: &NearTriangulation, seeds: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut q: VecDeque<usize> = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            q.push_back(s);
        }
    }
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if !g.is_outer(y) && !seen[y] {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    (0..g.n()).filter(|&v| seen[v]).collect()
}

/// Clockwise distance along the outer cycle from `a` to `b`.
fn arc_len(g: &NearTriangulation, a: usize, b: usize) -> usize {
    let (pa, pb) = (g.outer_pos(a).unwrap(), g.outer_pos(b).unwrap());
    (pb + g.h() - pa) % g.h()
}

/// Strictly inside the clockwise arc from `a` to `b`.
fn strictly_inside_arc(g: &NearTriangulation, a: usize, b: usize, x: usize) -> bool {
    let d = arc_len(g, a, x);
    d > 0 && d < arc_len(g, a, b)
}

/// For polygon `p` (clockwise), the number of host interior vertices on the
/// far side of each side.
fn side_interior_counts(g: &NearTriangulation, p: &Region, regions: &[Region]) -> Vec<usize> {
    let k = p.polygon.len();
    let mut counts = vec![0; k];
    for r in regions {
        if r.is_empty() || r.polygon == p.polygon {
            continue;
        }
        let side = (0..k).find(|&j| {
            let (a, b) = (p.polygon[j], p.polygon[(j + 1) % k]);
            r.polygon.iter().any(|&x| strictly_inside_arc(g, a, b, x))
        });
        counts[side.expect("region lies beyond some side of the polygon")] += r.interior.len();
    }
    counts
}

/// The terminal polygon with the smallest least vertex id.
pub fn find_terminal_polygon(g: &NearTriangulation) -> Result<TerminalDecomposition, DecompositionError> {
    if shape(g) != Shape::Irreducible {
        return Err(DecompositionError::NotIrreducible);
    }
    let regions = boundary_subgraph_regions(g);
    let best = regions
        .iter()
        .filter(|r| !r.is_empty())
        .filter_map(|r| {
            let counts = side_interior_counts(g, r, &regions);
            (counts.iter().filter(|&&c| c > 0).count() <= 1).then_some((r, counts))
        })
        .min_by_key(|(r, _)| *r.polygon.iter().min().unwrap())
        .expect("an irreducible near-triangulation has a terminal polygon");
    let (region, counts) = best;
    let k = region.polygon.len();
    let start = match counts.iter().position(|&c| c > 0) {
        Some(j) => (j + 1) % k,
        None => (0..k).min_by_key(|&i| region.polygon[i]).unwrap(),
    };
    let polygon: Vec<usize> = (0..k).map(|i| region.polygon[(start + i) % k]).collect();
    let counts: Vec<usize> = (0..k).map(|i| counts[(start + i) % k]).collect();
    let sides: Vec<(usize, usize)> = (0..k).map(|j| (polygon[j], polygon[(j + 1) % k])).collect();
    let flank_orders = sides.iter().zip(&counts).map(|(&(a, b), &c)| arc_len(g, a, b) + 1 + c).collect();
    let special_index = counts.iter().any(|&c| c > 0).then_some(k - 1);
    Ok(TerminalDecomposition {
        flank_is_mop: counts.iter().map(|&c| c == 0).collect(),
        polygon,
        sides,
        flank_orders,
        special_index,
        polygon_interior: region.interior.clone(),
    })
}

impl TerminalDecomposition {
    pub fn k(&self) -> usize {
        self.polygon.len()
    }

    pub fn v(&self, j: usize) -> usize {
        self.polygon[j % self.k()]
    }

    /// Boundary vertices strictly between the endpoints of side `j`, in
    /// clockwise order.
    pub fn flank_path(&self, g: &NearTriangulation, j: usize) -> Vec<usize> {
        let (a, b) = self.sides[j];
        let pa = g.outer_pos(a).unwrap();
        (1..arc_len(g, a, b)).map(|i| g.outer()[(pa + i) % g.h()]).collect()
    }

    /// The flank on side `j` as a standalone graph; its outer cycle runs
    /// from `v_j` clockwise to `v_{j+1}`.
    pub fn flank(&self, g: &NearTriangulation, j: usize) -> NearTriangulation {
        let (a, b) = self.sides[j];
        g.side_of_chord(a, b).expect("polygon sides are diagonals")
    }

    /// The piece on the polygon's side of side `j`.
    pub fn inner(&self, g: &NearTriangulation, j: usize) -> NearTriangulation {
        let (a, b) = self.sides[j];
        g.side_of_chord(b, a).expect("polygon sides are diagonals")
    }

    /// Sides usable as a single flank in the case analysis.
    pub fn single_flanks(&self) -> Vec<usize> {
        (0..self.k()).filter(|&j| Some(j) != self.special_index).collect()
    }

    /// Consecutive side pairs `(j, j + 1)` usable as two flanks.
    pub fn flank_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        match self.special_index {
            Some(_) => (0..k.saturating_sub(2)).map(|j| (j, j + 1)).collect(),
            None => (0..k).map(|j| (j, (j + 1) % k)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fan, irreducible7, k4};

    #[test]
    fn reducible_edges() {
        assert_eq!(find_reducible_edge(&fan(7)), None);
        assert_eq!(find_reducible_edge(&k4()), Some((0, 1)));
        assert_eq!(find_reducible_edge(&irreducible7()), None);
        assert_eq!(shape(&irreducible7()), Shape::Irreducible);
        assert_eq!(shape(&fan(5)), Shape::Mop);
    }

    #[test]
    fn regions_of_small_graphs() {
        let f = fan(6);
        let r = boundary_subgraph_regions(&f);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.polygon.len() == 3 && x.is_empty()));

        let r = boundary_subgraph_regions(&k4());
        assert_eq!(r, vec![Region { polygon: vec![0, 1, 2], interior: vec![3] }]);
    }

    #[test]
    fn region_count_matches_euler_on_boundary_subgraph() {
        let t = irreducible7();
        let r = boundary_subgraph_regions(&t);
        // T[C] is outerplanar with h vertices and e edges: e - h + 1 bounded faces
        let e = t.edges().iter().filter(|&&(a, b)| t.is_outer(a) && t.is_outer(b)).count();
        assert_eq!(r.len(), e - t.h() + 1);
        assert_eq!(r.iter().filter(|x| !x.is_empty()).count(), 1);
    }

    #[test]
    fn terminal_polygon_of_irreducible7() {
        let t = irreducible7();
        let td = find_terminal_polygon(&t).unwrap();
        assert_eq!(td.polygon, vec![0, 1, 2]);
        assert_eq!(td.flank_orders, vec![3, 3, 3]);
        assert_eq!(td.special_index, None);
        assert_eq!(td.polygon_interior, vec![3]);
        for j in 0..3 {
            let m = td.flank(&t, j);
            assert!(m.is_mop() && m.n() == 3);
            assert_eq!(td.inner(&t, j).n() + m.n(), t.n() + 2);
            assert_eq!(td.flank_path(&t, j).len(), 1);
        }
        assert_eq!(find_terminal_polygon(&fan(6)), Err(DecompositionError::NotIrreducible));
    }
}

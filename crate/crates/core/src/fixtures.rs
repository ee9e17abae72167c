//! Small hand-built near-triangulations used in tests and examples.

use crate::graph::{NearTriangulation, RawEmbedding};

/// K4 drawn as a triangle `0 1 2` around interior vertex 3.
pub fn k4() -> NearTriangulation {
    NearTriangulation::validate(RawEmbedding {
        n: 4,
        rotation: vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        outer: vec![0, 1, 2],
        labels: None,
    })
    .expect("K4 fixture")
}

/// K4 with an ear on every outer edge: the smallest irreducible
/// near-triangulation that is not a triangulation.
pub fn irreducible7() -> NearTriangulation {
    let mut g = k4();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        let label = g.fresh_label();
        g = g.add_ear(a, b, label).expect("ear on outer edge").0;
    }
    g
}

/// Convex `n`-gon triangulated by all diagonals from vertex 0.
pub fn fan(n: usize) -> NearTriangulation {
    let diagonals: Vec<_> = (2..n.saturating_sub(1)).map(|i| (0, i)).collect();
    NearTriangulation::convex_mop(n, &diagonals).expect("fan fixture")
}

/// Convex `n`-gon triangulated as a zigzag strip.
pub fn zigzag(n: usize) -> NearTriangulation {
    let mut diagonals = Vec::new();
    let (mut lo, mut hi) = (0usize, n - 1);
    let mut left = true;
    while hi - lo > 2 {
        if left {
            diagonals.push((lo + 1, hi));
            lo += 1;
        } else {
            diagonals.push((lo, hi - 1));
            hi -= 1;
        }
        left = !left;
    }
    NearTriangulation::convex_mop(n, &diagonals).expect("zigzag fixture")
}

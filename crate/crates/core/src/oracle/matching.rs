//! Perfect matchings in general graphs, backed by petgraph's blossom
//! implementation, plus a slow pairing enumeration used to cross-check it.

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

/// A perfect matching as a list of `(min, max)` pairs, if one exists.
/// `adj` lists neighbors per vertex and must be symmetric.
pub fn perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<(usize, usize)>> {
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(v, nb)| nb.iter().filter(move |&&u| v < u).map(move |&u| (v as u32, u as u32)));
    let mut g = UnGraph::<(), ()>::from_edges(edges);
    while g.node_count() < adj.len() {
        g.add_node(());
    }
    let m = maximum_matching(&g);
    if !m.is_perfect() {
        return None;
    }
    let mut pairs: Vec<(usize, usize)> =
        m.edges().map(|(a, b): (NodeIndex, NodeIndex)| (a.index().min(b.index()), a.index().max(b.index()))).collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Reference implementation: pair the lowest unmatched vertex with each
/// neighbor in turn and recurse. `adj[v]` is a bitmask over at most 64 vertices.
pub fn perfect_pairing_by_enumeration(adj: &[u64], set: u64) -> Option<Vec<(usize, usize)>> {
    if set == 0 {
        return Some(Vec::new());
    }
    let v = set.trailing_zeros() as usize;
    let rest = set & !(1 << v);
    let mut cand = adj[v] & rest;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if let Some(mut p) = perfect_pairing_by_enumeration(adj, rest & !(1 << u)) {
            p.push((v, u));
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists_from_masks(adj: &[u64]) -> Vec<Vec<usize>> {
        adj.iter().map(|&m| (0..64).filter(|&i| m >> i & 1 == 1).collect()).collect()
    }

    #[test]
    fn odd_cycle_with_pendant_needs_blossom() {
        // 5-cycle 0..4 with pendant 5 on vertex 0: perfect matching exists
        let mut adj = vec![Vec::new(); 6];
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)] {
            adj[a].push(b);
            adj[b].push(a);
        }
        let pm = perfect_matching(&adj).unwrap();
        assert_eq!(pm.len(), 3);
        assert!(pm.contains(&(0, 5)));
    }

    #[test]
    fn star_has_no_perfect_matching() {
        let adj = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        assert!(perfect_matching(&adj).is_none());
        assert_eq!(perfect_matching(&[vec![1], vec![0], vec![]]), None);
        assert_eq!(perfect_matching(&[]), Some(Vec::new()));
    }

    #[test]
    fn matching_agrees_with_enumeration_on_all_graphs_up_to_six_vertices() {
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let mut adj = vec![0u64; n];
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[a] |= 1 << b;
                        adj[b] |= 1 << a;
                    }
                }
                let full = (1u64 << n) - 1;
                let slow = perfect_pairing_by_enumeration(&adj, full).is_some();
                let fast = perfect_matching(&lists_from_masks(&adj)).is_some();
                assert_eq!(slow, fast, "n={n} mask={mask:b}");
            }
        }
    }
}

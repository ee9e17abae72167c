//! Instance generators: exhaustive polygon triangulations, uniform random
//! ones, and random near-triangulations with interior vertices.
//!
//! Randomness comes from SplitMix64 seeded with the caller's 64-bit seed.
//! Bounded draws use the multiply-shift map `(x * bound) >> 64`, so a corpus
//! is reproducible from its seed by any implementation of these rules.

use std::collections::BTreeSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{find_reducible_edge, shape, Shape};
use crate::graph::NearTriangulation;

/// Largest polygon order [`enumerate_mops`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("order {0} is outside the supported range")]
    TooLarge(usize),
    #[error("order {0} is below 3")]
    TooSmall(usize),
    #[error("cannot place {m} interior vertices in order {n}")]
    InfeasibleMix { n: usize, m: usize },
}

/// Seeded generator used by every random routine in this crate.
pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

pub fn catalan(k: usize) -> u64 {
    (0..k as u64).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Calls `f` with the diagonal list of every triangulation of the convex
/// `n`-gon, in a fixed order.
pub fn for_each_triangulation(n: usize, mut f: impl FnMut(&[(usize, usize)])) {
    type Chords = Vec<(usize, usize)>;
    type Visit<'a> = dyn FnMut(&[(usize, usize)]) + 'a;
    fn rec(pending: &mut Chords, diags: &mut Chords, f: &mut Visit) {
        let Some((i, j)) = pending.pop() else {
            f(diags);
            return;
        };
        for k in i + 1..j {
            let before = (pending.len(), diags.len());
            for (a, b) in [(i, k), (k, j)] {
                if b - a >= 2 {
                    diags.push((a, b));
                    pending.push((a, b));
                }
            }
            rec(pending, diags, f);
            pending.truncate(before.0);
            diags.truncate(before.1);
        }
        pending.push((i, j));
    }
    if n < 3 {
        return;
    }
    rec(&mut vec![(0, n - 1)], &mut Vec::new(), &mut f);
}

/// Streams every triangulation of the convex `n`-gon as a MOP.
pub fn for_each_mop(n: usize, mut f: impl FnMut(NearTriangulation)) -> Result<(), GenError> {
    check_enumeration_order(n)?;
    for_each_triangulation(n, |d| f(NearTriangulation::convex_mop(n, d).expect("triangulation is a MOP")));
    Ok(())
}

fn check_enumeration_order(n: usize) -> Result<(), GenError> {
    if n < 3 {
        Err(GenError::TooSmall(n))
    } else if n > MAX_ENUMERATION_ORDER {
        Err(GenError::TooLarge(n))
    } else {
        Ok(())
    }
}

/// All triangulations of the convex `n`-gon; `dedupe` keeps one per
/// isomorphism class.
pub fn enumerate_mops(n: usize, dedupe: bool) -> Result<Vec<NearTriangulation>, GenError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for_each_mop(n, |g| {
        if !dedupe || seen.insert(mop_canonical_form(&g)) {
            out.push(g);
        }
    })?;
    Ok(out)
}

/// Isomorphism invariant of a MOP: the least sorted edge list over all
/// rotations and reflections of its outer cycle.
pub fn mop_canonical_form(g: &NearTriangulation) -> Vec<(u8, u8)> {
    assert!(g.is_mop(), "canonical form is defined for MOPs");
    let h = g.h();
    let edges = g.edges();
    let mut best: Option<Vec<(u8, u8)>> = None;
    for s in 0..h {
        for mirror in [false, true] {
            let map = |v: usize| -> u8 {
                let p = g.outer_pos(v).unwrap();
                (if mirror { (s + h - p) % h } else { (p + h - s) % h }) as u8
            };
            let mut enc: Vec<(u8, u8)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (map(a), map(b));
                    (x.min(y), x.max(y))
                })
                .collect();
            enc.sort_unstable();
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
    }
    best.unwrap()
}

/// Uniform random triangulation of the convex `n`-gon.
pub fn random_mop(n: usize, seed: u64) -> Result<NearTriangulation, GenError> {
    random_mop_with(n, &mut Rng::new(seed))
}

/// As [`random_mop`], drawing from an existing generator. Rémy's algorithm
/// grows a uniform binary tree with `n - 2` internal nodes, which maps
/// bijectively to a triangulation: the root is the triangle on edge
/// `0 (n-1)`, its apex placed after the left subtree's vertices.
pub fn random_mop_with(n: usize, rng: &mut Rng) -> Result<NearTriangulation, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall(n));
    }
    const LEAF: usize = usize::MAX;
    let k = n - 2;
    let mut children: Vec<(usize, usize)> = vec![(LEAF, LEAF)];
    let mut parent = vec![LEAF];
    let mut root = 0;
    for _ in 0..k {
        let x = rng.below(children.len());
        let leaf_on_left = rng.below(2) == 0;
        let p = children.len();
        let l = p + 1;
        children.push(if leaf_on_left { (l, x) } else { (x, l) });
        children.push((LEAF, LEAF));
        parent.push(parent[x]);
        parent.push(p);
        if parent[p] == LEAF {
            root = p;
        } else {
            let q = parent[p];
            let c = &mut children[q];
            if c.0 == x {
                c.0 = p;
            } else {
                c.1 = p;
            }
        }
        parent[x] = p;
    }
    let mut internal = vec![0usize; children.len()];
    fn count(v: usize, children: &[(usize, usize)], internal: &mut [usize]) -> usize {
        let (l, r) = children[v];
        if l == usize::MAX {
            return 0;
        }
        let c = 1 + count(l, children, internal) + count(r, children, internal);
        internal[v] = c;
        c
    }
    count(root, &children, &mut internal);
    let mut diags = Vec::new();
    let mut stack = vec![(root, 0usize, n - 1)];
    while let Some((v, lo, hi)) = stack.pop() {
        let (l, r) = children[v];
        if l == LEAF {
            continue;
        }
        let apex = lo + internal[l] + 1;
        if apex - lo >= 2 {
            diags.push((lo, apex));
        }
        if hi - apex >= 2 {
            diags.push((apex, hi));
        }
        stack.push((l, lo, apex));
        stack.push((r, apex, hi));
    }
    Ok(NearTriangulation::convex_mop(n, &diags).expect("tree maps to a triangulation"))
}

/// Parameters of [`random_near_triangulation_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NtriParams {
    pub n: usize,
    pub m: usize,
    /// Random flip attempts after the insertions.
    pub flips: usize,
}

/// Random order-`n` near-triangulation with exactly `m` interior vertices,
/// using `n` flip attempts.
pub fn random_near_triangulation(n: usize, m: usize, seed: u64) -> Result<NearTriangulation, GenError> {
    random_near_triangulation_with(NtriParams { n, m, flips: n }, &mut Rng::new(seed))
}

/// Random MOP of order `n - m`, then `m` insertions into uniform bounded
/// faces, then random flips of non-boundary edges.
pub fn random_near_triangulation_with(p: NtriParams, rng: &mut Rng) -> Result<NearTriangulation, GenError> {
    if p.n < p.m + 3 {
        return Err(GenError::InfeasibleMix { n: p.n, m: p.m });
    }
    let mut g = random_mop_with(p.n - p.m, rng)?;
    for _ in 0..p.m {
        let faces = g.inner_faces();
        let f = faces[rng.below(faces.len())];
        let label = g.fresh_label();
        g = g.insert_in_face(f, label).expect("insertion into a bounded face").0;
    }
    for _ in 0..p.flips {
        let inner: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(a, b)| !g.is_boundary_edge(a, b)).collect();
        if inner.is_empty() {
            break;
        }
        let (a, b) = inner[rng.below(inner.len())];
        if let Ok(h) = g.flip(a, b) {
            g = h;
        }
    }
    Ok(g)
}

/// Grows a MOP of order `order` outward from boundary edge `a b` by
/// repeatedly attaching ears to random boundary edges of the growing piece.
pub fn glue_mop(g: &NearTriangulation, a: usize, b: usize, order: usize, rng: &mut Rng) -> NearTriangulation {
    let (a, b) = g.orient_boundary_edge(a, b).expect("gluing edge is on the boundary");
    let (la, lb) = (g.label(a), g.label(b));
    let mut g = g.clone();
    for _ in 2..order {
        let (ia, ib) = (g.id_of_label(la).unwrap(), g.id_of_label(lb).unwrap());
        let pa = g.outer_pos(ia).unwrap();
        let span = (g.outer_pos(ib).unwrap() + g.h() - pa) % g.h();
        let i = rng.below(span);
        let (x, y) = (g.outer()[(pa + i) % g.h()], g.outer()[(pa + i + 1) % g.h()]);
        let label = g.fresh_label();
        g = g.add_ear(x, y, label).expect("ear on boundary edge").0;
    }
    g
}

/// Makes `g` irreducible by gluing a random MOP (order `3..=max_flank`)
/// onto every boundary edge whose inner apex is interior.
pub fn irreducible_closure(g: &NearTriangulation, max_flank: usize, rng: &mut Rng) -> NearTriangulation {
    let mut g = g.clone();
    while let Some((a, b)) = find_reducible_edge(&g) {
        let order = rng.range(3, max_flank.max(3));
        g = glue_mop(&g, a, b, order, rng);
    }
    g
}

/// `count` irreducible near-triangulations of order at most `max_n`,
/// alternating between rejection sampling and irreducible closures.
pub fn irreducible_corpus(count: usize, seed: u64) -> Vec<NearTriangulation> {
    irreducible_corpus_bounded(count, 40, seed)
}

pub fn irreducible_corpus_bounded(count: usize, max_n: usize, seed: u64) -> Vec<NearTriangulation> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(g) = random_irreducible(max_n, &mut rng) {
            out.push(g);
        }
    }
    out
}

/// One draw of the irreducible-instance generator, or `None` when the
/// attempt overshoots `max_n` or lands on a reducible instance.
pub fn random_irreducible(max_n: usize, rng: &mut Rng) -> Option<NearTriangulation> {
    let max_n = max_n.max(7);
    if rng.below(2) == 0 {
        let n = rng.range(7, max_n);
        let m = rng.range(1, (n - 3).min(n / 2).max(1));
        let flips = rng.range(0, 3 * n);
        let g = random_near_triangulation_with(NtriParams { n, m, flips }, rng).ok()?;
        (shape(&g) == Shape::Irreducible).then_some(g)
    } else {
        let h = rng.range(3, (max_n / 3).max(3));
        let m = rng.range(1, (max_n / 4).max(1));
        let flips = rng.range(0, 2 * (h + m));
        let base = random_near_triangulation_with(NtriParams { n: h + m, m, flips }, rng).ok()?;
        let max_flank = rng.range(3, 12);
        let g = irreducible_closure(&base, max_flank, rng);
        (g.n() <= max_n && shape(&g) == Shape::Irreducible).then_some(g)
    }
}

/// A small random core whose reducible edges all receive flanks of order 3
/// or 5, kept only when it lands on order `n` and is irreducible. Around
/// `n = 14` these reach the branches where a reduced instance falls into
/// the exceptional family.
pub fn random_odd_flanked(n: usize, rng: &mut Rng) -> Option<NearTriangulation> {
    let h = rng.range(3, 6);
    let m = rng.range(1, 3);
    let flips = rng.range(0, 10);
    let mut g = random_near_triangulation_with(NtriParams { n: h + m, m, flips }, rng).ok()?;
    while let Some((a, b)) = find_reducible_edge(&g) {
        let order = if rng.below(2) == 0 { 3 } else { 5 };
        g = glue_mop(&g, a, b, order, rng);
        if g.n() > n {
            return None;
        }
    }
    (g.n() == n && shape(&g) == Shape::Irreducible).then_some(g)
}

/// How one instance of [`mixed_corpus`] was drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    Ntri,
    Irreducible,
    OddFlanked,
}

/// `count` near-triangulations of order 5 to `max_n` with mixed interior
/// counts: plain random instances, irreducible ones, and order-14
/// odd-flanked ones in a 2:2:1 rotation.
pub fn mixed_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(CorpusKind, NearTriangulation)> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = match out.len() % 5 {
            0 | 2 => CorpusKind::Ntri,
            1 | 3 => CorpusKind::Irreducible,
            _ => CorpusKind::OddFlanked,
        };
        let g = match kind {
            CorpusKind::Ntri => {
                let n = rng.range(5, max_n);
                let m = rng.range(0, n - 3);
                let flips = rng.range(0, 2 * n);
                random_near_triangulation_with(NtriParams { n, m, flips }, &mut rng).ok()
            }
            CorpusKind::Irreducible => random_irreducible(max_n, &mut rng),
            CorpusKind::OddFlanked => random_odd_flanked(14.min(max_n), &mut rng),
        };
        if let Some(g) = g {
            out.push((kind, g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::irreducible7;

    #[test]
    fn splitmix_test_vector() {
        let mut r = Rng::new(0);
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
    }

    #[test]
    fn catalan_counts() {
        for (n, expected) in [(3, 1), (4, 2), (5, 5), (6, 14), (8, 132), (12, 16796)] {
            let mut c = 0;
            for_each_triangulation(n, |_| c += 1);
            assert_eq!(c, expected);
            assert_eq!(catalan(n - 2), expected);
        }
    }

    #[test]
    fn isomorphism_classes() {
        assert_eq!(enumerate_mops(4, true).unwrap().len(), 1);
        assert_eq!(enumerate_mops(5, true).unwrap().len(), 1);
        assert_eq!(enumerate_mops(6, true).unwrap().len(), 3);
        assert_eq!(enumerate_mops(7, true).unwrap().len(), 4);
        assert_eq!(enumerate_mops(8, true).unwrap().len(), 12);
        assert_eq!(enumerate_mops(16, false), Err(GenError::TooLarge(16)));
    }

    #[test]
    fn random_mop_is_valid_and_deterministic() {
        let g = random_mop(30, 7).unwrap();
        assert!(g.is_mop() && g.n() == 30);
        assert_eq!(g, random_mop(30, 7).unwrap());
    }

    #[test]
    fn random_mop_is_uniform_on_pentagons() {
        // chi-square with 4 degrees of freedom; 18.47 is the 0.999 quantile
        let all = enumerate_mops(5, false).unwrap();
        let mut counts = vec![0f64; all.len()];
        let mut rng = Rng::new(12345);
        let draws = 10_000;
        for _ in 0..draws {
            let g = random_mop_with(5, &mut rng).unwrap();
            counts[all.iter().position(|x| x.edges() == g.edges()).unwrap()] += 1.0;
        }
        let e = draws as f64 / all.len() as f64;
        let chi2: f64 = counts.iter().map(|c| (c - e) * (c - e) / e).sum();
        assert!(chi2 < 18.47, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn near_triangulation_mix() {
        let g = random_near_triangulation(20, 6, 3).unwrap();
        assert_eq!((g.n(), g.m()), (20, 6));
        let m0 = random_near_triangulation(9, 0, 1).unwrap();
        assert!(m0.is_mop());
        assert_eq!(random_near_triangulation(5, 3, 0), Err(GenError::InfeasibleMix { n: 5, m: 3 }));
    }

    #[test]
    fn seven_vertex_irreducible_is_reachable() {
        let target = mop_free_signature(&irreducible7());
        let found = (0..2000u64).any(|s| {
            let g = random_near_triangulation(7, 1, s).unwrap();
            shape(&g) == Shape::Irreducible && mop_free_signature(&g) == target
        });
        assert!(found);
    }

    fn mop_free_signature(g: &NearTriangulation) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn irreducible_corpus_is_irreducible() {
        let corpus = irreducible_corpus(50, 9);
        assert_eq!(corpus.len(), 50);
        for g in &corpus {
            assert_eq!(shape(g), Shape::Irreducible);
            assert!(g.n() <= 40 && g.m() >= 1);
        }
    }
}

//! Exact domination parameters by exhaustive search, and the generic
//! set predicates shared by the verifiers.
//!
//! Subsets are enumerated by increasing size in colex order. A branch is
//! abandoned as soon as some vertex is neither dominated by the chosen
//! vertices nor by any vertex still available to the branch.

pub mod matching;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::NearTriangulation;

/// Default largest order the oracle accepts.
pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {n} exceeds the oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// An optimal set for one parameter; `pairs` is the pairing certificate
/// (empty for plain domination).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub size: usize,
    pub vertices: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub n: usize,
    pub gamma: usize,
    pub gamma_pr: usize,
    pub gamma_pr2: usize,
    pub witnesses: Witnesses,
    pub constructive_pr: Option<usize>,
    pub constructive_pr2: Option<usize>,
    /// `2 floor(n/4) - gamma_pr`.
    pub slack_pr: i64,
    /// `floor(2n/5) - gamma_pr2`.
    pub slack_pr2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub gamma: Witness,
    pub gamma_pr: Witness,
    pub gamma_pr2: Witness,
}

// ----------------------------------------------------------------------
// Predicates
// ----------------------------------------------------------------------

fn membership(g: &NearTriangulation, s: &[usize]) -> Option<Vec<bool>> {
    let mut inset = vec![false; g.n()];
    for &v in s {
        *inset.get_mut(v)? = true;
    }
    Some(inset)
}

/// Every vertex outside `s` has a neighbor in `s`. Out-of-range ids make it false.
pub fn is_dominating(g: &NearTriangulation, s: &[usize]) -> bool {
    let Some(inset) = membership(g, s) else { return false };
    (0..g.n()).all(|v| inset[v] || g.neighbors(v).iter().any(|&u| inset[u]))
}

/// Every vertex has a neighbor in `s`.
pub fn is_total_dominating(g: &NearTriangulation, s: &[usize]) -> bool {
    let Some(inset) = membership(g, s) else { return false };
    (0..g.n()).all(|v| g.neighbors(v).iter().any(|&u| inset[u]))
}

fn dedup_sorted(s: &[usize]) -> Option<Vec<usize>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    let len = v.len();
    v.dedup();
    (v.len() == len).then_some(v)
}

fn feasible_by<F: Fn(usize, usize) -> bool>(s: &[usize], related: F) -> Option<Vec<(usize, usize)>> {
    let set = dedup_sorted(s)?;
    if set.len() % 2 == 1 {
        return None;
    }
    let adj: Vec<Vec<usize>> =
        (0..set.len()).map(|i| (0..set.len()).filter(|&j| j != i && related(set[i], set[j])).collect()).collect();
    let pm = matching::perfect_matching(&adj)?;
    Some(pm.into_iter().map(|(i, j)| (set[i], set[j])).collect())
}

/// A perfect matching of `G[s]` if `s` is a paired dominating set.
pub fn is_paired_feasible(g: &NearTriangulation, s: &[usize]) -> Option<Vec<(usize, usize)>> {
    if !is_dominating(g, s) {
        return None;
    }
    feasible_by(s, |a, b| g.has_edge(a, b))
}

/// A partition of `s` into 2-sets at distance at most 2 if `s` is a
/// semipaired dominating set.
pub fn is_semipaired_feasible(g: &NearTriangulation, s: &[usize]) -> Option<Vec<(usize, usize)>> {
    if !is_dominating(g, s) {
        return None;
    }
    feasible_by(s, |a, b| g.within_two(a, b))
}

// ----------------------------------------------------------------------
// Exact search
// ----------------------------------------------------------------------

struct Masks {
    n: usize,
    closed: Vec<u64>,
    open: Vec<u64>,
    within_two: Vec<u64>,
    /// `prefix_cover[i]` = union of closed neighborhoods of vertices `< i`.
    prefix_cover: Vec<u64>,
}

impl Masks {
    fn new(g: &NearTriangulation) -> Self {
        let n = g.n();
        let open: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
        let closed: Vec<u64> = (0..n).map(|v| open[v] | 1 << v).collect();
        let within_two =
            (0..n).map(|v| g.neighbors(v).iter().fold(closed[v], |m, &u| m | closed[u]) & !(1 << v)).collect();
        let mut prefix_cover = vec![0u64; n + 1];
        for i in 0..n {
            prefix_cover[i + 1] = prefix_cover[i] | closed[i];
        }
        Self { n, closed, open, within_two, prefix_cover }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// Visits size-`k` subsets in colex order whose vertices dominate the graph,
/// stopping at the first one `accept` maps to `Some`.
fn search<T>(m: &Masks, k: usize, accept: &mut dyn FnMut(u64) -> Option<T>) -> Option<T> {
    fn rec<T>(
        m: &Masks,
        slots: usize,
        limit: usize,
        chosen: u64,
        covered: u64,
        accept: &mut dyn FnMut(u64) -> Option<T>,
    ) -> Option<T> {
        let missing = m.full() & !covered;
        if slots == 0 {
            return if missing == 0 { accept(chosen) } else { None };
        }
        if missing & !m.prefix_cover[limit] != 0 {
            return None;
        }
        for top in (slots - 1)..limit {
            let r = rec(m, slots - 1, top, chosen | 1 << top, covered | m.closed[top], accept);
            if r.is_some() {
                return r;
            }
        }
        None
    }
    rec(m, k, m.n, 0, 0, accept)
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn check_cap(g: &NearTriangulation, cap: usize) -> Result<Masks, OracleError> {
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    Ok(Masks::new(g))
}

/// Minimum dominating set, searching graphs up to order `cap` (at most 64).
pub fn exact_gamma_witness(g: &NearTriangulation, cap: usize) -> Result<Witness, OracleError> {
    let m = check_cap(g, cap)?;
    for k in 1..=m.n {
        if let Some(w) = search(&m, k, &mut |s| Some(s)) {
            return Ok(Witness { size: k, vertices: bits(w), pairs: Vec::new() });
        }
    }
    unreachable!("the whole vertex set dominates")
}

fn exact_even(g: &NearTriangulation, cap: usize, rel: fn(&Masks) -> &[u64]) -> Result<Witness, OracleError> {
    let m = check_cap(g, cap)?;
    let adj = rel(&m);
    for k in (2..=m.n).step_by(2) {
        let found = search(&m, k, &mut |s| matching::perfect_pairing_by_enumeration(adj, s));
        if let Some(mut pairs) = found {
            pairs.iter_mut().for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
            pairs.sort_unstable();
            let mut vertices: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            vertices.sort_unstable();
            return Ok(Witness { size: k, vertices, pairs });
        }
    }
    unreachable!("a near-triangulation on at least 3 vertices has a paired dominating set")
}

/// Minimum paired dominating set.
pub fn exact_gamma_pr_witness(g: &NearTriangulation, cap: usize) -> Result<Witness, OracleError> {
    exact_even(g, cap, |m| &m.open)
}

/// Minimum semipaired dominating set.
pub fn exact_gamma_pr2_witness(g: &NearTriangulation, cap: usize) -> Result<Witness, OracleError> {
    exact_even(g, cap, |m| &m.within_two)
}

pub fn exact_gamma(g: &NearTriangulation) -> Result<usize, OracleError> {
    exact_gamma_witness(g, DEFAULT_CAP).map(|w| w.size)
}

pub fn exact_gamma_pr(g: &NearTriangulation) -> Result<usize, OracleError> {
    exact_gamma_pr_witness(g, DEFAULT_CAP).map(|w| w.size)
}

pub fn exact_gamma_pr2(g: &NearTriangulation) -> Result<usize, OracleError> {
    exact_gamma_pr2_witness(g, DEFAULT_CAP).map(|w| w.size)
}

/// All three parameters with witnesses. Constructive sizes are left empty
/// for the caller to fill in.
pub fn report(g: &NearTriangulation, cap: usize) -> Result<DominationReport, OracleError> {
    let gamma = exact_gamma_witness(g, cap)?;
    let gamma_pr = exact_gamma_pr_witness(g, cap)?;
    let gamma_pr2 = exact_gamma_pr2_witness(g, cap)?;
    let n = g.n();
    Ok(DominationReport {
        n,
        gamma: gamma.size,
        gamma_pr: gamma_pr.size,
        gamma_pr2: gamma_pr2.size,
        slack_pr: crate::sets::paired_bound(n) as i64 - gamma_pr.size as i64,
        slack_pr2: crate::sets::semipaired_bound(n) as i64 - gamma_pr2.size as i64,
        witnesses: Witnesses { gamma, gamma_pr, gamma_pr2 },
        constructive_pr: None,
        constructive_pr2: None,
    })
}

/// Smallest even-size pair set found by scanning all pairs `(a, b)` with
/// `a < b` in lexicographic order; used for two-vertex searches in small pieces.
pub fn least_pair<F: Fn(usize, usize) -> bool>(n: usize, ok: F) -> Option<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| ok(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fan, irreducible7, k4, zigzag};

    fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
    }

    /// Definition-transcribed minimum, for cross-checking the pruned search.
    fn slow_minimum(g: &NearTriangulation, ok: impl Fn(&[usize]) -> bool) -> usize {
        subsets(g.n()).filter(|s| ok(s)).map(|s| s.len()).min().unwrap()
    }

    #[test]
    fn k4_values() {
        let g = k4();
        assert_eq!(exact_gamma(&g), Ok(1));
        assert_eq!(exact_gamma_pr(&g), Ok(2));
        assert_eq!(exact_gamma_pr2(&g), Ok(2));
        assert!(is_dominating(&g, &[0]));
        assert!(is_paired_feasible(&g, &[0]).is_none());
    }

    #[test]
    fn whole_set_predicates() {
        let g = irreducible7();
        let all: Vec<usize> = (0..7).collect();
        assert!(is_dominating(&g, &all));
        assert!(is_total_dominating(&g, &all));
        assert!(!is_dominating(&g, &[99]));
    }

    #[test]
    fn irreducible7_has_paired_number_two() {
        let g = irreducible7();
        let w = exact_gamma_pr_witness(&g, DEFAULT_CAP).unwrap();
        assert_eq!(w.size, 2);
        // the interior vertex misses the ear opposite its partner
        assert!(!w.vertices.contains(&3));
    }

    #[test]
    fn order_nine_fan_has_semipaired_number_two() {
        assert_eq!(exact_gamma_pr2(&fan(9)), Ok(2));
    }

    #[test]
    fn pruned_search_matches_definition() {
        for g in [k4(), irreducible7(), fan(8), zigzag(9), zigzag(10)] {
            let gamma = slow_minimum(&g, |s| is_dominating(&g, s));
            let pr = slow_minimum(&g, |s| is_paired_feasible(&g, s).is_some());
            let pr2 = slow_minimum(&g, |s| is_semipaired_feasible(&g, s).is_some());
            let r = report(&g, DEFAULT_CAP).unwrap();
            assert_eq!((r.gamma, r.gamma_pr, r.gamma_pr2), (gamma, pr, pr2));
            assert!(is_paired_feasible(&g, &r.witnesses.gamma_pr.vertices).is_some());
            assert!(is_semipaired_feasible(&g, &r.witnesses.gamma_pr2.vertices).is_some());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(exact_gamma_witness(&fan(10), 9), Err(OracleError::TooLarge { n: 10, cap: 9 }));
    }

    #[test]
    fn least_pair_is_lexicographic() {
        assert_eq!(least_pair(4, |a, b| a + b == 3), Some((0, 3)));
        assert_eq!(least_pair(3, |_, _| false), None);
    }
}

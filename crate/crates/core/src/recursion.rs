//! Plumbing shared by the two constructive solvers: errors, coverage
//! counters, and pair sets keyed by vertex label.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Label, NearTriangulation, SurgeryError};

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum SolveError {
    #[error("order {0} is below the theorem's threshold")]
    TooSmall(usize),
    #[error("input belongs to the exceptional family")]
    IsFamilyF,
    #[error("internal assertion failed: {0}")]
    InternalAssert(String),
}

impl SolveError {
    pub fn assert(msg: impl Into<String>) -> Self {
        SolveError::InternalAssert(msg.into())
    }
}

impl From<crate::small_mops::SmallMopError> for SolveError {
    fn from(e: crate::small_mops::SmallMopError) -> Self {
        SolveError::InternalAssert(format!("small MOP lemma failed: {e}"))
    }
}

impl From<crate::decomposition::DecompositionError> for SolveError {
    fn from(e: crate::decomposition::DecompositionError) -> Self {
        SolveError::InternalAssert(format!("decomposition failed: {e}"))
    }
}

impl From<SurgeryError> for SolveError {
    fn from(e: SurgeryError) -> Self {
        SolveError::InternalAssert(format!("surgery failed: {e}"))
    }
}

/// How often each case and sub-case of the recursions ran.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coverage(pub BTreeMap<&'static str, u64>);

impl Coverage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hit(&mut self, key: &'static str) {
        *self.0.entry(key).or_default() += 1;
    }

    pub fn count(&self, key: &str) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &Coverage) {
        for (k, v) in &other.0 {
            *self.0.entry(k).or_default() += v;
        }
    }
}

/// Case keys every corpus run is expected to reach.
pub const PAIRED_CASES: [&str; 8] = [
    "paired.case1",
    "paired.case2",
    "paired.case3",
    "paired.case4",
    "paired.case5",
    "paired.case6",
    "paired.case7",
    "paired.case8",
];

pub const SEMIPAIRED_CASES: [&str; 7] = [
    "semipaired.case1",
    "semipaired.case2",
    "semipaired.case3",
    "semipaired.case4",
    "semipaired.case5",
    "semipaired.case6",
    "semipaired.case7",
];

/// The three places where a reduced instance lands in the exceptional family.
pub const FAMILY_SITES: [&str; 3] =
    ["semipaired.fsite.edge_restore", "semipaired.fsite.contraction", "semipaired.fsite.five_three"];

/// Disjoint pairs of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairSet(pub Vec<(Label, Label)>);

impl PairSet {
    pub fn from_ids(g: &NearTriangulation, pairs: &[(usize, usize)]) -> Self {
        Self(pairs.iter().map(|&(a, b)| (g.label(a), g.label(b))).collect())
    }

    pub fn to_ids(&self, g: &NearTriangulation) -> Result<Vec<(usize, usize)>, SolveError> {
        self.0
            .iter()
            .map(|&(a, b)| match (g.id_of_label(a), g.id_of_label(b)) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(SolveError::assert(format!("label {a} or {b} missing after lift"))),
            })
            .collect()
    }

    pub fn contains(&self, x: Label) -> bool {
        self.0.iter().any(|&(a, b)| a == x || b == x)
    }

    pub fn partner(&self, x: Label) -> Option<Label> {
        self.0.iter().find_map(|&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Removes the pair holding `x`, returning the partner.
    pub fn take(&mut self, x: Label) -> Option<Label> {
        let i = self.0.iter().position(|&(a, b)| a == x || b == x)?;
        let (a, b) = self.0.remove(i);
        Some(if a == x { b } else { a })
    }

    pub fn push(&mut self, a: Label, b: Label) {
        self.0.push((a, b));
    }

    pub fn size(&self) -> usize {
        2 * self.0.len()
    }
}

/// Id in `g` of the vertex with label `l`, as an internal assertion.
pub fn id_of(g: &NearTriangulation, l: Label) -> Result<usize, SolveError> {
    g.id_of_label(l).ok_or_else(|| SolveError::assert(format!("label {l} not present")))
}

/// Removes the vertices with the given labels one at a time; each must be
/// on the boundary when its turn comes.
pub fn remove_labels(g: &NearTriangulation, labels: &[Label]) -> Result<NearTriangulation, SolveError> {
    let mut g = g.clone();
    for &l in labels {
        let v = id_of(&g, l)?;
        g = g.remove_vertex(v)?;
    }
    Ok(g)
}

/// Asserts the double-induction measure `(n, m)` strictly decreases.
pub fn check_measure(host: &NearTriangulation, reduced: &NearTriangulation) -> Result<(), SolveError> {
    if (reduced.n(), reduced.m()) < (host.n(), host.m()) {
        Ok(())
    } else {
        Err(SolveError::assert(format!(
            "recursion measure did not decrease: ({}, {}) -> ({}, {})",
            host.n(),
            host.m(),
            reduced.n(),
            reduced.m()
        )))
    }
}

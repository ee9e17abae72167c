//! Dominating-set types returned by the solvers, and their certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Label, NearTriangulation};

/// A paired dominating set: the pairs form a perfect matching of the set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedDomSet {
    pub pairs: Vec<(usize, usize)>,
}

/// A semipaired dominating set: the set is split into 2-sets at distance at most 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemipairedDomSet {
    pub twosets: Vec<(usize, usize)>,
}

impl PairedDomSet {
    pub fn vertices(&self) -> Vec<usize> {
        flatten(&self.pairs)
    }

    pub fn len(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl SemipairedDomSet {
    pub fn vertices(&self) -> Vec<usize> {
        flatten(&self.twosets)
    }

    pub fn len(&self) -> usize {
        2 * self.twosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twosets.is_empty()
    }
}

fn flatten(pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum VerifyError {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} appears in two pairs")]
    Repeated(usize),
    #[error("vertex {0} is not dominated")]
    NotDominated(usize),
    #[error("partners {0} and {1} are not adjacent")]
    PartnersNotAdjacent(usize, usize),
    #[error("semipartners {0} and {1} are at distance greater than 2")]
    SemipartnersTooFar(usize, usize),
    #[error("set has {size} vertices, above the bound {bound}")]
    AboveBound { size: usize, bound: usize },
}

/// `2 * floor(n / 4)`.
pub fn paired_bound(n: usize) -> usize {
    2 * (n / 4)
}

/// `floor(2n / 5)`.
pub fn semipaired_bound(n: usize) -> usize {
    2 * n / 5
}

fn check_pairs(g: &NearTriangulation, pairs: &[(usize, usize)]) -> Result<Vec<bool>, VerifyError> {
    let mut inset = vec![false; g.n()];
    for &(a, b) in pairs {
        for x in [a, b] {
            if x >= g.n() {
                return Err(VerifyError::OutOfRange(x));
            }
            if inset[x] {
                return Err(VerifyError::Repeated(x));
            }
            inset[x] = true;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| !inset[v] && !g.neighbors(v).iter().any(|&u| inset[u])) {
        return Err(VerifyError::NotDominated(v));
    }
    Ok(inset)
}

/// Checks domination, partner adjacency and disjointness, but not the size bound.
pub fn verify_paired(g: &NearTriangulation, d: &PairedDomSet) -> Result<(), VerifyError> {
    check_pairs(g, &d.pairs)?;
    for &(a, b) in &d.pairs {
        if !g.has_edge(a, b) {
            return Err(VerifyError::PartnersNotAdjacent(a, b));
        }
    }
    Ok(())
}

/// As [`verify_paired`], plus `|D| <= 2 floor(n/4)`.
pub fn verify_paired_bound(g: &NearTriangulation, d: &PairedDomSet) -> Result<(), VerifyError> {
    verify_paired(g, d)?;
    let bound = paired_bound(g.n());
    if d.len() > bound {
        return Err(VerifyError::AboveBound { size: d.len(), bound });
    }
    Ok(())
}

/// Checks domination, 2-set distances (measured in `g`) and disjointness.
pub fn verify_semipaired(g: &NearTriangulation, d: &SemipairedDomSet) -> Result<(), VerifyError> {
    check_pairs(g, &d.twosets)?;
    for &(a, b) in &d.twosets {
        if !g.within_two(a, b) {
            return Err(VerifyError::SemipartnersTooFar(a, b));
        }
    }
    Ok(())
}

/// As [`verify_semipaired`], plus `|D| <= floor(2n/5)`.
pub fn verify_semipaired_bound(g: &NearTriangulation, d: &SemipairedDomSet) -> Result<(), VerifyError> {
    verify_semipaired(g, d)?;
    let bound = semipaired_bound(g.n());
    if d.len() > bound {
        return Err(VerifyError::AboveBound { size: d.len(), bound });
    }
    Ok(())
}

/// Pairs of labels; the form in which sets travel between a graph and the
/// graphs derived from it by surgery.
pub type LabelPairs = Vec<(Label, Label)>;

pub fn pairs_to_labels(g: &NearTriangulation, pairs: &[(usize, usize)]) -> LabelPairs {
    pairs.iter().map(|&(a, b)| (g.label(a), g.label(b))).collect()
}

/// Translates label pairs into ids of `g`; `None` if some label is absent.
pub fn pairs_from_labels(g: &NearTriangulation, pairs: &[(Label, Label)]) -> Option<Vec<(usize, usize)>> {
    pairs.iter().map(|&(a, b)| Some((g.id_of_label(a)?, g.id_of_label(b)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{irreducible7, k4};

    #[test]
    fn bounds() {
        assert_eq!(paired_bound(7), 2);
        assert_eq!(paired_bound(8), 4);
        assert_eq!(semipaired_bound(9), 3);
        assert_eq!(semipaired_bound(10), 4);
    }

    #[test]
    fn verification_catches_each_defect() {
        let g = irreducible7();
        let centre = 3;
        let good = PairedDomSet { pairs: vec![(0, 1)] };
        assert_eq!(verify_paired_bound(&g, &good), Ok(()));
        assert!(matches!(verify_paired(&g, &PairedDomSet { pairs: vec![(4, 5)] }), Err(VerifyError::NotDominated(_))));
        let ear = (0..7).find(|&v| g.degree(v) == 2).unwrap();
        let twice = PairedDomSet { pairs: vec![(centre, 0), (ear, centre)] };
        assert_eq!(verify_paired(&g, &twice), Err(VerifyError::Repeated(centre)));
        assert!(matches!(
            verify_paired(&g, &PairedDomSet { pairs: vec![(centre, 0)] }),
            Err(VerifyError::NotDominated(_))
        ));
        assert!(matches!(verify_paired(&k4(), &PairedDomSet { pairs: vec![(0, 9)] }), Err(VerifyError::OutOfRange(9))));
        let k = k4();
        assert_eq!(
            verify_paired_bound(&k, &PairedDomSet { pairs: vec![(0, 1), (2, 3)] }),
            Err(VerifyError::AboveBound { size: 4, bound: 2 })
        );
    }

    #[test]
    fn semipartners_measured_in_host() {
        let g = irreducible7();
        // two ears are at distance 2 through the shared triangle corner
        let ears: Vec<usize> = (0..7).filter(|&v| g.degree(v) == 2).collect();
        let s = SemipairedDomSet { twosets: vec![(ears[0], ears[1])] };
        let res = verify_semipaired(&g, &s);
        assert!(matches!(res, Ok(()) | Err(VerifyError::NotDominated(_))));
        assert!(g.within_two(ears[0], ears[1]));
    }

    #[test]
    fn label_round_trip() {
        let g = irreducible7();
        let pairs = vec![(3, 0), (4, 5)];
        let l = pairs_to_labels(&g, &pairs);
        assert_eq!(pairs_from_labels(&g, &l), Some(pairs));
        assert_eq!(pairs_from_labels(&g, &[(100, 0)]), None);
    }
}

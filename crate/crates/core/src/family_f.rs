//! The exceptional order-9 MOPs: a triangulated hexagon with an ear on each
//! of three alternating boundary edges. None of them has a semipaired
//! dominating set of size 2.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::generators::{for_each_triangulation, mop_canonical_form};
use crate::graph::NearTriangulation;
use crate::oracle::{is_semipaired_feasible, least_pair};
use crate::sets::SemipairedDomSet;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum FamilyError {
    #[error("vertex {0} does not have degree 2")]
    NotDegreeTwo(usize),
    #[error("graph is not in the exceptional family")]
    NotInFamily,
    #[error("no boundary edge removal lands in the exceptional family")]
    NoSuchEdge,
    #[error("no qualifying pair exists")]
    NoPair,
}

#[derive(Clone, Debug)]
pub struct FamilyFMember {
    pub mop: NearTriangulation,
    /// Ids of the six hexagon vertices.
    pub base_hexagon: Vec<usize>,
    /// Each ear with the hexagon edge it sits on.
    pub ears: Vec<(usize, (usize, usize))>,
}

struct Catalog {
    members: Vec<FamilyFMember>,
    forms: BTreeSet<Vec<(u8, u8)>>,
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut members = Vec::new();
        let mut forms = BTreeSet::new();
        for_each_triangulation(6, |diags| {
            let base = NearTriangulation::convex_mop(6, diags).expect("hexagon triangulation");
            for phase in 0..2 {
                let mut g = base.clone();
                let mut ears = Vec::new();
                for i in 0..3 {
                    let (a, b) = ((phase + 2 * i) % 6, (phase + 2 * i + 1) % 6);
                    let label = g.fresh_label();
                    let (next, x) = g.add_ear(a, b, label).expect("ear on hexagon edge");
                    g = next;
                    ears.push((x, (a, b)));
                }
                if forms.insert(mop_canonical_form(&g)) {
                    members.push(FamilyFMember { mop: g, base_hexagon: (0..6).collect(), ears });
                }
            }
        });
        Catalog { members, forms }
    })
}

/// Every member, one per isomorphism class.
pub fn enumerate_family_f() -> &'static [FamilyFMember] {
    &catalog().members
}

pub fn is_in_family_f(g: &NearTriangulation) -> bool {
    g.n() == 9 && g.is_mop() && catalog().forms.contains(&mop_canonical_form(g))
}

fn near_dominates(g: &NearTriangulation, u: usize, v: usize, w: usize) -> bool {
    (0..g.n()).all(|x| x == u || x == v || x == w || g.has_edge(x, v) || g.has_edge(x, w))
}

fn near_pair(g: &NearTriangulation, u: usize, must: Option<usize>) -> Result<(usize, usize), FamilyError> {
    if !is_in_family_f(g) {
        return Err(FamilyError::NotInFamily);
    }
    if u >= g.n() || g.degree(u) != 2 {
        return Err(FamilyError::NotDegreeTwo(u));
    }
    least_pair(g.n(), |v, w| {
        must.is_none_or(|t| t == v || t == w)
            && g.distance(u, v) == 2
            && g.distance(u, w) == 2
            && g.within_two(v, w)
            && near_dominates(g, u, v, w)
    })
    .ok_or(FamilyError::NoPair)
}

/// A pair at distance 2 from degree-2 vertex `u`, at most 2 apart, that
/// dominates everything except `u`.
pub fn near_domset_for_degree2(g: &NearTriangulation, u: usize) -> Result<(usize, usize), FamilyError> {
    near_pair(g, u, None)
}

/// As [`near_domset_for_degree2`], additionally containing `t`.
pub fn near_domset_containing(g: &NearTriangulation, u: usize, t: usize) -> Result<(usize, usize), FamilyError> {
    near_pair(g, u, Some(t))
}

/// For a member `h`, the edges `(u, t)` whose addition gives an order-9
/// near-triangulation in which `u t` is a reducible boundary edge.
pub fn restorable_edges(h: &NearTriangulation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in (0..h.n()).filter(|&u| h.degree(u) == 2) {
        let (p, q) = (h.outer_prev(u).unwrap(), h.outer_next(u).unwrap());
        for t in [h.outer_next(q).unwrap(), h.outer_prev(p).unwrap()] {
            if !h.has_edge(u, t) {
                out.push((u, t));
            }
        }
    }
    out
}

/// Adds edge `u t` outside `h` across the corner at `u`'s outer neighbor.
pub fn restore_edge(h: &NearTriangulation, u: usize, t: usize) -> Option<NearTriangulation> {
    let mut raw = h.to_raw();
    let q = h.outer_next(u)?;
    let p = h.outer_prev(u)?;
    if h.outer_next(q) == Some(t) {
        // u -> q -> t becomes u -> t; new face u q t
        let iu = raw.rotation[u].iter().position(|&x| x == q)?;
        raw.rotation[u].insert(iu, t);
        let it = raw.rotation[t].iter().position(|&x| x == q)?;
        raw.rotation[t].insert(it + 1, u);
        raw.outer.retain(|&x| x != q);
    } else if h.outer_prev(p) == Some(t) {
        let iu = raw.rotation[u].iter().position(|&x| x == p)?;
        raw.rotation[u].insert(iu + 1, t);
        let it = raw.rotation[t].iter().position(|&x| x == p)?;
        raw.rotation[t].insert(it, u);
        raw.outer.retain(|&x| x != p);
    } else {
        return None;
    }
    NearTriangulation::validate(raw).ok()
}

/// Which route [`semipd2_after_edge_restore`] took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RestoreRoute {
    /// The near-dominating pair of the member, containing the far end of the edge.
    NearPair,
    /// Least semipaired pair of the restored graph, found by search.
    Search,
}

/// A size-2 semipaired dominating set of an order-9 near-triangulation that
/// becomes a family member when some boundary edge is removed.
pub fn semipd2_after_edge_restore(g: &NearTriangulation) -> Result<(SemipairedDomSet, RestoreRoute), FamilyError> {
    if g.n() != 9 {
        return Err(FamilyError::NoSuchEdge);
    }
    let h = g.h();
    for i in 0..h {
        let (a, b) = (g.outer()[i], g.outer()[(i + 1) % h]);
        let Ok(member) = g.remove_edge(a, b) else { continue };
        if !is_in_family_f(&member) {
            continue;
        }
        let (la, lb) = (g.label(a), g.label(b));
        let (ma, mb) = (member.id_of_label(la).unwrap(), member.id_of_label(lb).unwrap());
        let (u, t) = if member.degree(ma) == 2 { (ma, mb) } else { (mb, ma) };
        if let Ok((v, w)) = near_domset_containing(&member, u, t) {
            let pair = (g.id_of_label(member.label(v)).unwrap(), g.id_of_label(member.label(w)).unwrap());
            if is_semipaired_feasible(g, &[pair.0, pair.1]).is_some() {
                return Ok((SemipairedDomSet { twosets: vec![pair] }, RestoreRoute::NearPair));
            }
        }
        return least_pair(g.n(), |x, y| is_semipaired_feasible(g, &[x, y]).is_some())
            .map(|p| (SemipairedDomSet { twosets: vec![p] }, RestoreRoute::Search))
            .ok_or(FamilyError::NoPair);
    }
    Err(FamilyError::NoSuchEdge)
}

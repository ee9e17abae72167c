//! Constructive paired domination: a paired dominating set of size at most
//! `2 floor(n/4)` for every near-triangulation of order `n >= 4`.
//!
//! The recursion follows the double induction on `(n, m)`: reducible edges
//! are stripped, MOPs are cut by a diagonal, and irreducible instances are
//! reduced around a terminal polygon. Each reduction is a [`Plan`]: one
//! smaller instance plus a lift that turns its solution into one for the
//! host. Every lifted set is verified before it is returned.

use crate::decomposition::{find_terminal_polygon, shape, Shape, TerminalDecomposition};
use crate::graph::{Label, NearTriangulation};
use crate::oracle::exact_gamma_pr_witness;
use crate::recursion::{check_measure, id_of, remove_labels, Coverage, PairSet, SolveError};
use crate::sets::{verify_paired_bound, PairedDomSet};
use crate::small_mops::{split_by_diagonal, td2_heptagon, td2_hexagon, td2_pentagon};

/// Largest MOP order handed to the exact oracle.
const MOP_BASE_ORDER: usize = 8;

/// A paired dominating set of size at most `2 floor(n/4)`.
pub fn compute_paired(g: &NearTriangulation) -> Result<PairedDomSet, SolveError> {
    compute_paired_with_coverage(g, &mut Coverage::new())
}

/// As [`compute_paired`], recording which cases ran.
pub fn compute_paired_with_coverage(g: &NearTriangulation, cov: &mut Coverage) -> Result<PairedDomSet, SolveError> {
    if g.n() < 4 {
        return Err(SolveError::TooSmall(g.n()));
    }
    let d = solve(g, cov)?;
    Ok(PairedDomSet { pairs: d.to_ids(g)? })
}

/// The MOP base case on its own.
pub fn mop_paired(g: &NearTriangulation) -> Result<PairedDomSet, SolveError> {
    if g.n() < 4 {
        return Err(SolveError::TooSmall(g.n()));
    }
    if !g.is_mop() {
        return Err(SolveError::assert("mop_paired needs a MOP"));
    }
    let mut cov = Coverage::new();
    let d = checked(g, mop_solve(g, &mut cov)?)?;
    Ok(PairedDomSet { pairs: d.to_ids(g)? })
}

fn checked(g: &NearTriangulation, d: PairSet) -> Result<PairSet, SolveError> {
    let pairs = d.to_ids(g)?;
    verify_paired_bound(g, &PairedDomSet { pairs })
        .map_err(|e| SolveError::assert(format!("paired lift on n={} m={}: {e}", g.n(), g.m())))?;
    Ok(d)
}

fn solve(g: &NearTriangulation, cov: &mut Coverage) -> Result<PairSet, SolveError> {
    if g.n() < 4 {
        return Err(SolveError::assert(format!("recursion reached order {}", g.n())));
    }
    let d = match shape(g) {
        Shape::Mop => mop_solve(g, cov)?,
        _ if g.n() <= 6 => {
            cov.hit("paired.base.oracle");
            by_oracle(g)?
        }
        Shape::Reducible((a, b)) => {
            cov.hit("paired.reducible");
            let t = g.remove_edge(a, b)?;
            check_measure(g, &t)?;
            solve(&t, cov)?
        }
        Shape::Irreducible => {
            let td = find_terminal_polygon(g)?;
            let plan = plan_irreducible(g, &td)?;
            run(g, &plan, cov)?
        }
    };
    checked(g, d)
}

fn run(g: &NearTriangulation, plan: &Plan, cov: &mut Coverage) -> Result<PairSet, SolveError> {
    cov.hit(plan.case);
    check_measure(g, &plan.reduced)?;
    let d = solve(&plan.reduced, cov)?;
    plan.lift(g, d, cov)
}

fn by_oracle(g: &NearTriangulation) -> Result<PairSet, SolveError> {
    let w = exact_gamma_pr_witness(g, 64).map_err(|e| SolveError::assert(e.to_string()))?;
    Ok(PairSet::from_ids(g, &w.pairs))
}

fn mop_solve(g: &NearTriangulation, cov: &mut Coverage) -> Result<PairSet, SolveError> {
    if g.n() <= MOP_BASE_ORDER {
        cov.hit("paired.mop.oracle");
        return by_oracle(g);
    }
    let h = g.h();
    for i in 0..h {
        let e = (g.outer()[i], g.outer()[(i + 1) % h]);
        let split = split_by_diagonal(g, e, 4)?;
        if let Some(plan) = piece_plan(g, split.piece, split.diagonal, "paired.mop.split")? {
            return run(g, &plan, cov);
        }
    }
    Err(SolveError::assert("no boundary edge gives a usable MOP split"))
}

/// One reduction step: solve `reduced`, then lift.
#[derive(Clone, Debug)]
pub struct Plan {
    pub case: &'static str,
    pub reduced: NearTriangulation,
    lift: Lift,
}

#[derive(Clone, Debug)]
enum Lift {
    /// Piece of order 5 cut off by diagonal `p q`, contracted into `w`.
    Piece5 { piece: NearTriangulation, p: Label, q: Label, w: Label },
    /// Piece of order 6 cut off by diagonal `p q`.
    Piece6 { piece: NearTriangulation, p: Label, q: Label },
    /// Piece of order 7.
    Piece7 { piece: NearTriangulation },
    /// Order-4 flank: `a` is the flank end adjacent to both flank vertices,
    /// `v` its other boundary neighbor, `x y` the gadget ears.
    Case1 { a: Label, v: Label, x: Label, y: Label, w_near: Label, w_far: Label },
    /// Two order-3 flanks `vj w1 s` and `s w2 vj2`; `wp` is the new ear on `w1 s`.
    Case6 { vj: Label, w1: Label, s: Label, w2: Label, wp: Label },
    /// Order-5 flank `piece` sharing `s` with the next flank; `far` is its
    /// other end and `s_next` its vertex next to `s`. `extra` is added as a
    /// pair when the next flank also has order 5.
    FiveFlank { piece: NearTriangulation, s: Label, far: Label, s_next: Label, extra: Option<(Label, Label)> },
}

impl Plan {
    /// Turns a paired dominating set of `reduced` into one of `host`.
    pub fn lift(&self, host: &NearTriangulation, mut d: PairSet, cov: &mut Coverage) -> Result<PairSet, SolveError> {
        match &self.lift {
            Lift::Piece5 { piece, p, q, w } => {
                let pid = |l: Label| id_of(piece, l);
                if !d.contains(*w) {
                    cov.hit("paired.piece5.w_absent");
                    let s = td2_pentagon(piece, pid(*p)?)?;
                    d.push(piece.label(s.pair.0), piece.label(s.pair.1));
                } else {
                    let z = d.take(*w).unwrap();
                    let zh = id_of(host, z)?;
                    let (c, o) = if host.has_edge(zh, id_of(host, *q)?) {
                        (*q, *p)
                    } else if host.has_edge(zh, id_of(host, *p)?) {
                        (*p, *q)
                    } else {
                        return Err(SolveError::assert("partner of the contracted vertex sees neither end"));
                    };
                    let s = td2_pentagon(piece, pid(o)?)?;
                    d.push(c, z);
                    if !s.contains(pid(c)?) {
                        cov.hit("paired.piece5.w_present.apart");
                        d.push(piece.label(s.pair.0), piece.label(s.pair.1));
                    } else {
                        cov.hit("paired.piece5.w_present.both_ends");
                        let oi = pid(o)?;
                        let next = [piece.outer_prev(oi).unwrap(), piece.outer_next(oi).unwrap()]
                            .into_iter()
                            .find(|&x| piece.label(x) != c)
                            .unwrap();
                        d.push(o, piece.label(next));
                    }
                }
            }
            Lift::Piece6 { piece, p, q } => {
                let (pi, qi) = (id_of(piece, *p)?, id_of(piece, *q)?);
                let s = td2_hexagon(piece, (pi, qi))?;
                let (u, v) = if s.pair.0 == pi || s.pair.0 == qi { s.pair } else { (s.pair.1, s.pair.0) };
                if d.contains(piece.label(u)) {
                    cov.hit("paired.piece6.shared");
                    let vp = free_boundary_neighbor(piece, v, &d, &[u])?;
                    d.push(piece.label(v), piece.label(vp));
                } else {
                    cov.hit("paired.piece6.disjoint");
                    d.push(piece.label(u), piece.label(v));
                }
            }
            Lift::Piece7 { piece } => {
                let s = td2_heptagon(piece)?;
                let (a, b) = s.pair;
                match (d.contains(piece.label(a)), d.contains(piece.label(b))) {
                    (false, false) => {
                        cov.hit("paired.piece7.disjoint");
                        d.push(piece.label(a), piece.label(b));
                    }
                    (true, true) => cov.hit("paired.piece7.both_shared"),
                    (shared_a, _) => {
                        cov.hit("paired.piece7.one_shared");
                        let (u, v) = if shared_a { (a, b) } else { (b, a) };
                        let vp = free_boundary_neighbor(piece, v, &d, &[u])?;
                        d.push(piece.label(v), piece.label(vp));
                    }
                }
            }
            Lift::Case1 { a, v, x, y, w_near, w_far } => {
                lift_case1(host, d.clone(), *a, *v, *x, *y, *w_near, *w_far, cov).map(|r| d = r)?
            }
            Lift::Case6 { vj, w1, s, w2, wp } => {
                let (vj, w1, s, w2, wp) = (*vj, *w1, *s, *w2, *wp);
                match d.partner(wp) {
                    Some(z) if z == s => {
                        cov.hit("paired.case6.wp_with_s");
                        d.take(wp);
                        d.push(s, w2);
                    }
                    Some(z) if z == w1 => {
                        d.take(wp);
                        if d.contains(s) {
                            cov.hit("paired.case6.wp_with_w1.s_in");
                        } else {
                            cov.hit("paired.case6.wp_with_w1.s_out");
                            d.push(s, w2);
                        }
                    }
                    Some(_) => return Err(SolveError::assert("new ear paired outside its neighborhood")),
                    None if d.contains(s) => cov.hit("paired.case6.wp_absent.s_in"),
                    None => {
                        cov.hit("paired.case6.wp_absent.s_out");
                        if d.take(w1) != Some(vj) {
                            return Err(SolveError::assert("flank tip not paired with polygon corner"));
                        }
                        d.push(vj, s);
                    }
                }
            }
            Lift::FiveFlank { piece, s, far, s_next, extra } => {
                let t = td2_pentagon(piece, id_of(piece, *s)?)?;
                let other = piece.label(t.other(id_of(piece, *s)?));
                if other == *far && d.contains(*far) {
                    cov.hit(if extra.is_some() { "paired.case8.far_shared" } else { "paired.case7.far_shared" });
                    d.push(*s, *s_next);
                } else {
                    cov.hit(if extra.is_some() { "paired.case8.disjoint" } else { "paired.case7.disjoint" });
                    d.push(*s, other);
                }
                if let Some((a, b)) = extra {
                    d.push(*a, *b);
                }
            }
        }
        Ok(d)
    }
}

#[allow(clippy::too_many_arguments)]
fn lift_case1(
    host: &NearTriangulation,
    mut d: PairSet,
    a: Label,
    v: Label,
    x: Label,
    y: Label,
    w_near: Label,
    w_far: Label,
    cov: &mut Coverage,
) -> Result<PairSet, SolveError> {
    let bad = |what: &str| SolveError::assert(format!("case 1 lift: {what}"));
    match (d.contains(a), d.contains(x), d.contains(y)) {
        (true, false, false) => cov.hit("paired.case1.a_in.none"),
        (true, false, true) => {
            cov.hit("paired.case1.a_in.y");
            if d.take(y) != Some(a) {
                return Err(bad("y not paired with a"));
            }
            d.push(a, w_near);
        }
        (true, true, false) => match d.take(x) {
            Some(z) if z == a => {
                cov.hit("paired.case1.a_in.x_with_a");
                d.push(a, w_far);
            }
            Some(z) if z == v => {
                let vh = id_of(host, v)?;
                let free = host.neighbors(vh).iter().map(|&u| host.label(u)).find(|&l| !d.contains(l) && l != v);
                match free {
                    Some(vp) => {
                        cov.hit("paired.case1.a_in.x_with_v.free");
                        d.push(v, vp);
                    }
                    None => cov.hit("paired.case1.a_in.x_with_v.saturated"),
                }
            }
            _ => return Err(bad("x paired outside its neighborhood")),
        },
        (true, true, true) => {
            if d.partner(x) == Some(y) {
                cov.hit("paired.case1.a_in.xy_paired");
                d.take(x);
            } else {
                cov.hit("paired.case1.a_in.y_with_a");
                if d.take(y) != Some(a) || d.take(x) != Some(v) {
                    return Err(bad("unexpected partners of x and y"));
                }
                d.push(v, a);
            }
        }
        (false, _, false) => {
            cov.hit("paired.case1.a_out.y_out");
            if d.take(x) != Some(v) {
                return Err(bad("x not paired with v"));
            }
            d.push(v, a);
        }
        (false, _, true) => {
            cov.hit("paired.case1.a_out.y_in");
            if d.take(y) != Some(x) {
                return Err(bad("y not paired with x"));
            }
            d.push(a, w_far);
        }
    }
    Ok(d)
}

/// A boundary neighbor of `v` in `piece` outside `d` and `avoid`.
fn free_boundary_neighbor(
    piece: &NearTriangulation,
    v: usize,
    d: &PairSet,
    avoid: &[usize],
) -> Result<usize, SolveError> {
    [piece.outer_prev(v).unwrap(), piece.outer_next(v).unwrap()]
        .into_iter()
        .find(|&u| !avoid.contains(&u) && !d.contains(piece.label(u)))
        .ok_or_else(|| SolveError::assert("no free boundary neighbor in piece"))
}

/// Plan for a MOP piece cut off from `host` by diagonal `d`, where
/// `piece == host.side_of_chord(d.0, d.1)` up to ids. `None` when the piece
/// has order 5 and `d` does not contract in the remainder.
fn piece_plan(
    host: &NearTriangulation,
    piece: NearTriangulation,
    d: (usize, usize),
    case: &'static str,
) -> Result<Option<Plan>, SolveError> {
    let rest = host.side_of_chord(d.1, d.0)?;
    let (p, q) = (host.label(d.0), host.label(d.1));
    let plan = match piece.n() {
        5 => {
            let w = host.fresh_label();
            let Ok((reduced, _)) = rest.contract_edge_labeled(id_of(&rest, p)?, id_of(&rest, q)?, w) else {
                return Ok(None);
            };
            Plan { case, reduced, lift: Lift::Piece5 { piece, p, q, w } }
        }
        6 => Plan { case, reduced: rest, lift: Lift::Piece6 { piece, p, q } },
        7 => Plan { case, reduced: rest, lift: Lift::Piece7 { piece } },
        r => return Err(SolveError::assert(format!("piece of order {r}"))),
    };
    Ok(Some(plan))
}

/// Chooses the case for an irreducible instance and builds its plan.
pub fn plan_irreducible(host: &NearTriangulation, td: &TerminalDecomposition) -> Result<Plan, SolveError> {
    let singles = td.single_flanks();
    let ord = |j: usize| td.flank_orders[j];
    if let Some(&j) = singles.iter().find(|&&j| ord(j) == 4) {
        return case1(host, td, j);
    }
    for &j in singles.iter().filter(|&&j| ord(j) == 5) {
        if let Some(p) = piece_plan(host, td.flank(host, j), td.sides[j], "paired.case2")? {
            return Ok(p);
        }
    }
    for (case, pred) in [("paired.case3", 6..=6), ("paired.case4", 7..=7)] {
        if let Some(&j) = singles.iter().find(|&&j| pred.contains(&ord(j))) {
            return piece_plan(host, td.flank(host, j), td.sides[j], case)?
                .ok_or_else(|| SolveError::assert("piece plan refused"));
        }
    }
    if let Some(&j) = singles.iter().find(|&&j| ord(j) >= 8) {
        let flank = td.flank(host, j);
        let (a, b) = td.sides[j];
        let e = (id_of(&flank, host.label(a))?, id_of(&flank, host.label(b))?);
        let split = split_by_diagonal(&flank, e, 4)?;
        let diag = (id_of(host, flank.label(split.diagonal.0))?, id_of(host, flank.label(split.diagonal.1))?);
        return piece_plan(host, split.piece, diag, "paired.case5")?
            .ok_or_else(|| SolveError::assert("cut diagonal of a large flank is not contractible"));
    }
    let pairs = td.flank_pairs();
    if let Some(&(j, j2)) = pairs.iter().find(|&&(j, j2)| ord(j) == 3 && ord(j2) == 3) {
        return case6(host, td, j, j2);
    }
    if let Some(&(j, j2)) = pairs.iter().find(|&&(j, j2)| matches!((ord(j), ord(j2)), (5, 3) | (3, 5))) {
        return five_three(host, td, j, j2);
    }
    if let Some(&(j, j2)) = pairs.iter().find(|&&(j, j2)| ord(j) == 5 && ord(j2) == 5) {
        return case8(host, td, j, j2);
    }
    Err(SolveError::assert(format!("no case applies to flank orders {:?}", td.flank_orders)))
}

/// Removes `d_j` from `t`, then hangs ear `x` on `v a` and ear `y` on `x a`.
/// `t` must be the inner piece with `d_j` already removed; returns the ids
/// of `x` and `y` in the result.
pub fn case1_gadget(
    t: &NearTriangulation,
    v: usize,
    a: usize,
    x_label: Label,
    y_label: Label,
) -> Result<(NearTriangulation, usize, usize), SolveError> {
    let (t1, x) = t.add_ear(v, a, x_label)?;
    let (t2, y) = t1.add_ear(x, a, y_label)?;
    Ok((t2, x, y))
}

/// Removes `w2`, removes the now-boundary edge `s vj2`, and hangs a new
/// ear on `w1 s`; returns the new ear's id.
pub fn case6_gadget(
    t: &NearTriangulation,
    w1: usize,
    w2: usize,
    s: usize,
    vj2: usize,
    label: Label,
) -> Result<(NearTriangulation, usize), SolveError> {
    let (lw1, ls, lv) = (t.label(w1), t.label(s), t.label(vj2));
    let t1 = t.remove_vertex(w2)?;
    let t2 = t1.remove_edge(id_of(&t1, ls)?, id_of(&t1, lv)?)?;
    Ok(t2.add_ear(id_of(&t2, lw1)?, id_of(&t2, ls)?, label)?)
}

fn case1(host: &NearTriangulation, td: &TerminalDecomposition, j: usize) -> Result<Plan, SolveError> {
    let (vj, vj1) = td.sides[j];
    let path = td.flank_path(host, j);
    let (p1, p2) = (path[0], path[1]);
    let (a, b, w_near, w_far) = if host.has_edge(vj, p2) { (vj, vj1, p1, p2) } else { (vj1, vj, p2, p1) };
    let tj = td.inner(host, j);
    let (at, bt) = (id_of(&tj, host.label(a))?, id_of(&tj, host.label(b))?);
    let vt = [tj.outer_prev(at).unwrap(), tj.outer_next(at).unwrap()].into_iter().find(|&u| u != bt).unwrap();
    let v = tj.label(vt);
    let t1 = tj.remove_edge(at, bt)?;
    let x = host.fresh_label();
    let y = x + 1;
    let (reduced, _, _) = case1_gadget(&t1, id_of(&t1, v)?, id_of(&t1, host.label(a))?, x, y)?;
    let l = |u: usize| host.label(u);
    Ok(Plan {
        case: "paired.case1",
        reduced,
        lift: Lift::Case1 { a: l(a), v, x, y, w_near: l(w_near), w_far: l(w_far) },
    })
}

fn case6(host: &NearTriangulation, td: &TerminalDecomposition, j: usize, j2: usize) -> Result<Plan, SolveError> {
    let (vj, s) = td.sides[j];
    let vj2 = td.sides[j2].1;
    let w1 = td.flank_path(host, j)[0];
    let w2 = td.flank_path(host, j2)[0];
    let wp = host.fresh_label();
    let (reduced, _) = case6_gadget(host, w1, w2, s, vj2, wp)?;
    let l = |u: usize| host.label(u);
    Ok(Plan { case: "paired.case6", reduced, lift: Lift::Case6 { vj: l(vj), w1: l(w1), s: l(s), w2: l(w2), wp } })
}

/// Flank orders 5 and 3 on consecutive sides, in either order.
fn five_three(host: &NearTriangulation, td: &TerminalDecomposition, j: usize, j2: usize) -> Result<Plan, SolveError> {
    let s = td.sides[j].1;
    let (f5, f3, far) = if td.flank_orders[j] == 5 { (j, j2, td.sides[j].0) } else { (j2, j, td.sides[j2].1) };
    let path5 = td.flank_path(host, f5);
    let s_next = if f5 == j { path5[2] } else { path5[0] };
    let tip = td.flank_path(host, f3)[0];
    let piece = td.flank(host, f5);
    let t0 = td.inner(host, f5);
    let reduced = remove_labels(&t0, &[host.label(tip), host.label(s)])?;
    let l = |u: usize| host.label(u);
    Ok(Plan {
        case: "paired.case7",
        reduced,
        lift: Lift::FiveFlank { piece, s: l(s), far: l(far), s_next: l(s_next), extra: None },
    })
}

fn case8(host: &NearTriangulation, td: &TerminalDecomposition, j: usize, j2: usize) -> Result<Plan, SolveError> {
    let (far, s) = td.sides[j];
    let vj2 = td.sides[j2].1;
    let l = |u: usize| host.label(u);
    let path = td.flank_path(host, j);
    let path2 = td.flank_path(host, j2);
    let t0 = td.inner(host, j);
    let t0 = t0.side_of_chord(id_of(&t0, l(vj2))?, id_of(&t0, l(s))?)?;
    let mut candidates: Vec<usize> = td.polygon_interior.iter().copied().filter(|&v| host.has_edge(v, s)).collect();
    candidates.sort_unstable();
    let t1 = t0.remove_vertex(id_of(&t0, l(s))?)?;
    let reduced = candidates
        .iter()
        .find_map(|&v| t1.remove_vertex(id_of(&t1, l(v)).ok()?).ok())
        .ok_or_else(|| SolveError::assert("no removable interior neighbor of the shared corner"))?;
    Ok(Plan {
        case: "paired.case8",
        reduced,
        lift: Lift::FiveFlank {
            piece: td.flank(host, j),
            s: l(s),
            far: l(far),
            s_next: l(path[2]),
            extra: Some((l(path2[1]), l(path2[2]))),
        },
    })
}

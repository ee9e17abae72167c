//! SVG drawings: barycentric (Tutte) layout with the outer cycle pinned to
//! a regular polygon, and a highlighted dominating set.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::graph::NearTriangulation;

pub const LAYOUT_ITERATIONS: usize = 200;
const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// Outer vertices evenly spaced clockwise on the unit circle, interior
/// vertices relaxed to neighbor averages (Gauss-Seidel sweeps).
pub fn tutte_layout(g: &NearTriangulation) -> Vec<[f64; 2]> {
    let n = g.n();
    let h = g.h();
    let mut pos = vec![[0.0, 0.0]; n];
    for (i, &v) in g.outer().iter().enumerate() {
        // clockwise on screen, where y grows downward
        let t = TAU * i as f64 / h as f64;
        pos[v] = [t.sin(), -t.cos()];
    }
    let inner: Vec<usize> = (0..n).filter(|&v| !g.is_outer(v)).collect();
    for _ in 0..LAYOUT_ITERATIONS {
        for &v in &inner {
            let nb = g.neighbors(v);
            let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u][0], y + pos[u][1]));
            pos[v] = [sx / nb.len() as f64, sy / nb.len() as f64];
        }
    }
    pos
}

fn fit(pos: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pos {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let s = (SIZE - 2.0 * MARGIN) / span;
    pos.iter().map(|p| [MARGIN + (p[0] - lo[0]) * s, MARGIN + (p[1] - lo[1]) * s]).collect()
}

/// An SVG 1.1 document. `coords` overrides the layout; `pairs` are drawn
/// as arcs between partners and their vertices filled.
pub fn render_svg(g: &NearTriangulation, coords: Option<&[[f64; 2]]>, pairs: &[(usize, usize)]) -> String {
    let raw = match coords {
        Some(c) => c.to_vec(),
        None => tutte_layout(g),
    };
    let p = fit(&raw);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#888" stroke-width="1.2">"##);
    for (a, b) in g.edges() {
        let w = if g.is_boundary_edge(a, b) { 2.0 } else { 1.2 };
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-width="{w}"/>"#,
            p[a][0], p[a][1], p[b][0], p[b][1]
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="none" stroke="#c0392b" stroke-width="2.5">"##);
    for &(a, b) in pairs {
        let (mx, my) = ((p[a][0] + p[b][0]) / 2.0, (p[a][1] + p[b][1]) / 2.0);
        let (dx, dy) = (p[b][0] - p[a][0], p[b][1] - p[a][1]);
        // bow the arc sideways so it stays visible over a shared edge
        let (cx, cy) = (mx - 0.25 * dy, my + 0.25 * dx);
        let _ = writeln!(
            s,
            r#"<path d="M {:.2} {:.2} Q {cx:.2} {cy:.2} {:.2} {:.2}"/>"#,
            p[a][0], p[a][1], p[b][0], p[b][1]
        );
    }
    let _ = writeln!(s, "</g>");
    let chosen: Vec<bool> = (0..g.n()).map(|v| pairs.iter().any(|&(a, b)| a == v || b == v)).collect();
    for v in 0..g.n() {
        let fill = if chosen[v] { "#c0392b" } else { "white" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="7" fill="{fill}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="9" text-anchor="middle">{}</text>"#,
            p[v][0],
            p[v][1],
            p[v][0],
            p[v][1] - 10.0,
            g.label(v)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{irreducible7, k4};

    #[test]
    fn interior_vertex_lands_at_centroid() {
        let pos = tutte_layout(&k4());
        let c = [(pos[0][0] + pos[1][0] + pos[2][0]) / 3.0, (pos[0][1] + pos[1][1] + pos[2][1]) / 3.0];
        assert!((pos[3][0] - c[0]).abs() < 1e-9 && (pos[3][1] - c[1]).abs() < 1e-9);
    }

    #[test]
    fn layout_is_deterministic_and_inside() {
        let g = irreducible7();
        let a = tutte_layout(&g);
        assert_eq!(a, tutte_layout(&g));
        assert!(a.iter().all(|p| p[0].hypot(p[1]) <= 1.0 + 1e-9));
    }

    #[test]
    fn svg_shape() {
        let g = irreducible7();
        let svg = render_svg(&g, None, &[(0, 1)]);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line").count(), g.edge_count());
        assert_eq!(svg.matches("<circle").count(), 7);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches(r##"fill="#c0392b""##).count(), 2);
        let fixed: Vec<[f64; 2]> = (0..7).map(|i| [i as f64, (i * i) as f64]).collect();
        assert_ne!(render_svg(&g, Some(&fixed), &[]), render_svg(&g, None, &[]));
    }
}

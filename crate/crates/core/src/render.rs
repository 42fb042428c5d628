//! SVG pictures of a solution: the outer projection in red with the placed
//! inner projection drawn over it in black.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{project_points, Vec2};
use crate::hull::{bounding_box, convex_hull};
use crate::nieuwland::{mu_of, DEFAULT_MU_ITERS};
use crate::polyhedron::Polyhedron;
use crate::solver::{verify, SolutionSeptuple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub width_px: u32,
    pub height_px: u32,
    pub outer_color: String,
    pub inner_color: String,
    pub stroke_width: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width_px: 600,
            height_px: 600,
            outer_color: "red".into(),
            inner_color: "black".into(),
            stroke_width: 1.5,
        }
    }
}

fn points_attr(pts: &[Vec2]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", p.x, p.y))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Drops hull vertices closer than `tol` to the previously kept one. A view
/// a hair off an axis yields slivers far below pixel size.
fn merge_close(pts: &[Vec2], tol: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(pts.len());
    for &p in pts {
        if out.last().is_none_or(|q| q.distance(p) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].distance(out[out.len() - 1]) <= tol {
        out.pop();
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Both polygons are written in projection coordinates, so their `points`
/// read back directly; only the enclosing group flips the y-axis.
pub fn render_solution(p: &Polyhedron, v: &SolutionSeptuple, spec: &RenderSpec) -> Result<String> {
    if spec.width_px == 0 || spec.height_px == 0 {
        return Err(Error::Domain("image dimensions must be positive".into()));
    }
    let outer = convex_hull(&project_points(p.vertices(), v.outer()))?;
    let inner = convex_hull(&project_points(p.vertices(), v.inner()))?.apply_isometry(v.alpha, v.x, v.y);

    let margin = verify(p, v);
    let mu = mu_of(p, v, DEFAULT_MU_ITERS).map(|r| r.mu).ok();

    let (lo, hi) = bounding_box(outer.vertices());
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    let pad = 0.05 * extent;
    let merge_tol = 1e-6 * extent;
    let (min_x, min_y) = (lo.x - pad, -(hi.y + pad));
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        "<!-- Projection plane coordinates; the group below flips y so that up is up. -->"
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{min_x} {min_y} {w} {h}">"#,
        spec.width_px, spec.height_px
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(p.name()));
    let mu_text = mu.map_or_else(|| "n/a".to_string(), |m| format!("{m:.9}"));
    let _ = writeln!(
        s,
        "  <desc>margin={margin:e} mu={mu_text} septuple={:?}</desc>",
        v.to_array()
    );
    let _ = writeln!(s, r#"  <g transform="scale(1,-1)" fill="none" stroke-linejoin="round">"#);
    for (poly, color, class) in [(&outer, &spec.outer_color, "outer"), (&inner, &spec.inner_color, "inner")] {
        let _ = writeln!(
            s,
            r#"    <polygon class="{class}" points="{}" stroke="{}" stroke-width="{}" vector-effect="non-scaling-stroke"/>"#,
            points_attr(&merge_close(poly.vertices(), merge_tol)),
            escape(color),
            spec.stroke_width
        );
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

//! Planar convex hulls (Andrew's monotone chain) and the polygon invariants
//! used as necessary-condition filters: area, perimeter and diameter.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Relative collinearity tolerance. A turn counts as strictly convex only if
/// its cross product exceeds `COLLINEAR_EPS * scale²`, where `scale` is the
/// bounding-box diagonal of the input.
pub const COLLINEAR_EPS: f64 = 1e-12;

/// A convex polygon with vertices in strict counter-clockwise order, no three
/// collinear. Area, perimeter and diameter are computed once on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    area: f64,
    perimeter: f64,
    diameter: f64,
}

impl ConvexPolygon {
    /// Builds a polygon from vertices already in strict CCW convex order.
    /// The order is checked; use [`convex_hull`] for arbitrary point sets.
    pub fn from_ccw(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if (b - a).cross(c - b) <= 0.0 {
                return Err(Error::DegenerateInput(format!(
                    "vertices {i}..{} do not make a strict left turn",
                    i + 2
                )));
            }
        }
        Ok(Self::from_ccw_unchecked(vertices))
    }

    pub(crate) fn from_ccw_unchecked(vertices: Vec<Vec2>) -> Self {
        let area = shoelace(&vertices);
        let perimeter = perimeter_of(&vertices);
        let diameter = rotating_calipers_diameter(&vertices);
        Self {
            vertices,
            area,
            perimeter,
            diameter,
        }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Iterator over directed edges `(A_i, A_{i+1})`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Rotates by `alpha` about the origin, then translates by `(x, y)`.
    pub fn apply_isometry(&self, alpha: f64, x: f64, y: f64) -> ConvexPolygon {
        apply_isometry(self, alpha, x, y)
    }

    /// Lemma-style necessary conditions for `self` to fit strictly inside
    /// `outer`: all three invariants must be strictly smaller.
    pub fn may_fit_inside(&self, outer: &ConvexPolygon) -> bool {
        self.area < outer.area && self.perimeter < outer.perimeter && self.diameter < outer.diameter
    }
}

pub fn area(poly: &ConvexPolygon) -> f64 {
    poly.area
}

pub fn perimeter(poly: &ConvexPolygon) -> f64 {
    poly.perimeter
}

pub fn diameter(poly: &ConvexPolygon) -> f64 {
    poly.diameter
}

pub fn apply_isometry(poly: &ConvexPolygon, alpha: f64, x: f64, y: f64) -> ConvexPolygon {
    let (s, c) = alpha.sin_cos();
    let t = Vec2::new(x, y);
    let vertices = poly.vertices.iter().map(|p| p.rotate_sc(s, c) + t).collect();
    // A proper rotation keeps the orientation, so CCW order survives.
    ConvexPolygon::from_ccw_unchecked(vertices)
}

/// Strict convex hull of `points`.
pub fn convex_hull(points: &[Vec2]) -> Result<ConvexPolygon> {
    let idx = hull_indices(points)?;
    Ok(ConvexPolygon::from_ccw_unchecked(
        idx.into_iter().map(|i| points[i]).collect(),
    ))
}

/// Indices into `points` of the strict hull vertices, counter-clockwise,
/// starting at the lexicographically smallest point. When several input
/// points coincide, the lowest index represents them.
pub fn hull_indices(points: &[Vec2]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("point {i} is not finite")));
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x.partial_cmp(&q.x)
            .unwrap_or(Ordering::Equal)
            .then(p.y.partial_cmp(&q.y).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });
    // Exact duplicates: keep the first (lowest) index only.
    order.dedup_by(|b, a| points[*a] == points[*b]);

    let (min, max) = bounding_box(points);
    let scale = (max - min).norm();
    let eps = COLLINEAR_EPS * scale * scale;

    let turn = |o: usize, a: usize, b: usize| (points[a] - points[o]).cross(points[b] - points[o]);

    let mut hull: Vec<usize> = Vec::with_capacity(points.len() + 1);
    // Lower chain.
    for &i in &order {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= eps {
            hull.pop();
        }
        hull.push(i);
    }
    // Upper chain.
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= eps {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();

    if hull.len() < 3 {
        return Err(Error::DegenerateInput("all points are collinear".into()));
    }
    Ok(hull)
}

pub(crate) fn bounding_box(points: &[Vec2]) -> (Vec2, Vec2) {
    let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    (min, max)
}

fn shoelace(v: &[Vec2]) -> f64 {
    let n = v.len();
    let twice: f64 = (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum();
    0.5 * twice
}

fn perimeter_of(v: &[Vec2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].distance(v[(i + 1) % n])).sum()
}

/// Diameter of a strictly convex CCW polygon by rotating calipers: for each
/// edge, advance the antipodal pointer while the triangle area grows and
/// record the distances of the antipodal pairs.
fn rotating_calipers_diameter(v: &[Vec2]) -> f64 {
    let n = v.len();
    if n < 3 {
        return v.windows(2).map(|w| w[0].distance(w[1])).fold(0.0, f64::max);
    }
    let tri = |a: usize, b: usize, c: usize| (v[b] - v[a]).cross(v[c] - v[a]).abs();
    let mut best: f64 = 0.0;
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        while tri(i, ni, (j + 1) % n) > tri(i, ni, j) {
            j = (j + 1) % n;
        }
        // With a pair of parallel edges both ends of the far edge are
        // antipodal, and rounding decides where `j` stops; check both
        // neighbours too.
        for k in [(j + n - 1) % n, j, (j + 1) % n] {
            best = best.max(v[i].distance(v[k])).max(v[ni].distance(v[k]));
        }
    }
    best
}

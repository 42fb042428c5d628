//! Convex polyhedra given by their vertex sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::lp::{self, HalfSpace};

/// Relative tolerance (in units of the circumradius) for the extremality,
/// antipodality and coplanarity checks.
const REL_TOL: f64 = 1e-9;

/// A named convex polyhedron. Vertices are in convex position, not coplanar,
/// and the origin lies strictly inside their hull. When `point_symmetric` is
/// set the vertex set is closed under `A ↦ -A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyhedron {
    name: String,
    vertices: Vec<Vec3>,
    point_symmetric: bool,
    circumradius: f64,
}

impl Polyhedron {
    /// Validates and builds a polyhedron.
    pub fn new(name: impl Into<String>, vertices: Vec<Vec3>, point_symmetric: bool) -> Result<Self> {
        let name = name.into();
        if vertices.len() < 4 {
            return Err(Error::DegenerateInput(format!(
                "a polyhedron needs at least 4 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::DegenerateInput(format!("vertex {i} is not finite")));
        }
        let r = circumradius_of(&vertices);
        let tol = REL_TOL * r;
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if (vertices[i] - vertices[j]).norm() <= tol {
                    return Err(Error::DegenerateInput(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        if !spans_space(&vertices, r) {
            return Err(Error::DegenerateInput("vertices are coplanar".into()));
        }
        if let Some(i) = first_non_extremal(&vertices, r) {
            return Err(Error::NotConvexPosition(i));
        }
        if !origin_is_interior(&vertices, r) {
            return Err(Error::OriginNotInterior);
        }
        if point_symmetric && !antipodally_closed(&vertices, tol) {
            return Err(Error::DegenerateInput(format!(
                "'{name}' is flagged point symmetric but its vertex set is not closed under negation"
            )));
        }
        Ok(Self {
            name,
            vertices,
            point_symmetric,
            circumradius: r,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point_symmetric(&self) -> bool {
        self.point_symmetric
    }

    /// Largest vertex norm.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// The copy `c·P`, scaled about the origin. All invariants survive for
    /// `c > 0`.
    pub fn scaled(&self, c: f64) -> Polyhedron {
        assert!(c > 0.0 && c.is_finite(), "scale must be positive, got {c}");
        Polyhedron {
            name: self.name.clone(),
            vertices: self.vertices.iter().map(|&v| v * c).collect(),
            point_symmetric: self.point_symmetric,
            circumradius: self.circumradius * c,
        }
    }

    pub fn centroid(&self) -> Vec3 {
        centroid(&self.vertices)
    }
}

pub(crate) fn centroid(vertices: &[Vec3]) -> Vec3 {
    let sum = vertices.iter().fold(Vec3::default(), |acc, &v| acc + v);
    sum * (1.0 / vertices.len() as f64)
}

/// True when the vertex set is closed under negation within `tol`.
pub fn antipodally_closed(vertices: &[Vec3], tol: f64) -> bool {
    vertices
        .iter()
        .all(|&a| vertices.iter().any(|&b| (a + b).norm() <= tol))
}

fn circumradius_of(vertices: &[Vec3]) -> f64 {
    vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Greedy affine-independence test: farthest point from v0, farthest from
/// that line, farthest from that plane.
fn spans_space(v: &[Vec3], r: f64) -> bool {
    let scale = r.max(f64::MIN_POSITIVE);
    let p0 = v[0];
    let p1 = *v
        .iter()
        .max_by(|a, b| (**a - p0).norm().total_cmp(&(**b - p0).norm()))
        .unwrap();
    let e1 = p1 - p0;
    if e1.norm() <= REL_TOL * scale {
        return false;
    }
    let p2 = *v
        .iter()
        .max_by(|a, b| e1.cross(**a - p0).norm().total_cmp(&e1.cross(**b - p0).norm()))
        .unwrap();
    let n = e1.cross(p2 - p0);
    if n.norm() <= REL_TOL * scale * scale {
        return false;
    }
    let h = v
        .iter()
        .map(|&w| n.dot(w - p0).abs())
        .fold(0.0, f64::max);
    h > REL_TOL * scale * scale * scale
}

/// Index of the first vertex that is not a strict extreme point of the hull.
///
/// Vertex `v` is extreme iff some direction `d` separates it strictly from all
/// others: maximize `s` subject to `d·(w - v) + s ≤ 0` and `|d_i| ≤ 1`.
fn first_non_extremal(v: &[Vec3], r: f64) -> Option<usize> {
    let eps = REL_TOL * r;
    (0..v.len()).find(|&i| {
        let cons: Vec<HalfSpace> = v
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| {
                let d = w - v[i];
                HalfSpace::new(vec![d.x, d.y, d.z, 1.0], 0.0)
            })
            .collect();
        match lp::maximize(&[0.0, 0.0, 0.0, 1.0], &cons, 1.0, i as u64) {
            lp::LpOutcome::Optimal(x) => x[3] <= eps,
            lp::LpOutcome::Infeasible => true,
        }
    })
}

/// The origin is strictly interior iff every direction `d` has some vertex
/// with `d·w > 0`. Normalizing `‖d‖_∞ = 1` splits this into six LPs, one per
/// cube face: with `d_k = ±1` fixed, minimize `t = max_i d·w_i`.
fn origin_is_interior(v: &[Vec3], r: f64) -> bool {
    let eps = REL_TOL * r;
    let bound = 4.0 * r.max(1.0);
    for k in 0..3 {
        for sign in [-1.0, 1.0] {
            let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
            // Variables: (d_a, d_b, t); maximize -t.
            let mut cons: Vec<HalfSpace> = v
                .iter()
                .map(|w| {
                    let a = w.to_array();
                    HalfSpace::new(vec![a[others[0]], a[others[1]], -1.0], -sign * a[k])
                })
                .collect();
            cons.push(HalfSpace::new(vec![1.0, 0.0, 0.0], 1.0));
            cons.push(HalfSpace::new(vec![-1.0, 0.0, 0.0], 1.0));
            cons.push(HalfSpace::new(vec![0.0, 1.0, 0.0], 1.0));
            cons.push(HalfSpace::new(vec![0.0, -1.0, 0.0], 1.0));
            match lp::maximize(&[0.0, 0.0, -1.0], &cons, bound, (2 * k) as u64 + (sign > 0.0) as u64) {
                lp::LpOutcome::Optimal(x) if x[2] > eps => {}
                _ => return false,
            }
        }
    }
    true
}

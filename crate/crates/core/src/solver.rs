//! Randomized search for Rupert solutions and their verification.
//!
//! A solution is a septuple `(x, y, α, θ₁, φ₁, θ₂, φ₂)` such that
//! `T_{x,y} ∘ R_α ∘ M_{θ₁,φ₁}(P)` lies strictly inside `M_{θ₂,φ₂}(P)`.
//! Index 1 is the inner projection, index 2 the outer one.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::containment::{
    self, fit_rotation, fit_rotation_translation, strictly_inside, DEFAULT_ROTATION_SAMPLES,
    DEFAULT_ROTATION_TRANSLATION_SAMPLES,
};
use crate::error::{Error, Result};
use crate::geometry::{project_points, ProjectionAngles, Vec2, Vec3};
use crate::hull::{convex_hull, hull_indices, ConvexPolygon};
use crate::polyhedron::Polyhedron;
use crate::precise::DD;
use crate::rng::trial_rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolutionSeptuple {
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
}

impl SolutionSeptuple {
    pub const fn new(x: f64, y: f64, alpha: f64, theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> Self {
        Self {
            x,
            y,
            alpha,
            theta1,
            phi1,
            theta2,
            phi2,
        }
    }

    /// Order `(x, y, α, θ₁, φ₁, θ₂, φ₂)`.
    pub fn to_array(self) -> [f64; 7] {
        [self.x, self.y, self.alpha, self.theta1, self.phi1, self.theta2, self.phi2]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5], a[6])
    }

    pub fn inner(&self) -> ProjectionAngles {
        ProjectionAngles::new(self.theta1, self.phi1)
    }

    pub fn outer(&self) -> ProjectionAngles {
        ProjectionAngles::new(self.theta2, self.phi2)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Projections drawn per batch (`M`); at least 2.
    pub batch_size: usize,
    pub max_batches: usize,
    pub rotation_samples: usize,
    pub rotation_translation_samples: usize,
    /// Fix `x = y = 0` and search rotations only when the polyhedron is point
    /// symmetric. Ignored for other polyhedra.
    pub point_symmetric_mode: bool,
    /// Wall-clock limit, checked between batches.
    pub time_budget: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            batch_size: 100,
            max_batches: 200,
            rotation_samples: DEFAULT_ROTATION_SAMPLES,
            rotation_translation_samples: DEFAULT_ROTATION_TRANSLATION_SAMPLES,
            point_symmetric_mode: true,
            time_budget: None,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.batch_size < 2 {
            return Err(Error::Domain(format!("batch size must be at least 2, got {}", self.batch_size)));
        }
        Ok(())
    }

    fn uses_symmetry(&self, p: &Polyhedron) -> bool {
        self.point_symmetric_mode && p.is_point_symmetric()
    }
}

/// Uniformly distributed viewing direction: `θ ~ U[0, 2π)`,
/// `φ = arccos(u)` with `u ~ U(-1, 1)`.
pub fn draw_projection<R: Rng + ?Sized>(rng: &mut R) -> ProjectionAngles {
    let ut: f64 = rng.gen();
    let u: f64 = rng.gen_range(-1.0..1.0);
    projection_from_uniforms(ut, u)
}

/// `ut ∈ [0, 1)` picks the azimuth, `u ∈ [-1, 1]` the cosine of the polar
/// angle.
pub fn projection_from_uniforms(ut: f64, u: f64) -> ProjectionAngles {
    ProjectionAngles::new(2.0 * PI * ut, u.clamp(-1.0, 1.0).acos())
}

/// Both projections of a septuple, ready for repeated margin queries at
/// different scalings of the inner copy.
pub struct Placement {
    inner: Vec<Vec2>,
    outer: ConvexPolygon,
    outer_indices: Vec<usize>,
    sin_alpha: f64,
    cos_alpha: f64,
    shift: Vec2,
}

impl Placement {
    pub fn new(p: &Polyhedron, v: &SolutionSeptuple) -> Result<Self> {
        let outer_pts = project_points(p.vertices(), v.outer());
        let outer_indices = hull_indices(&outer_pts)?;
        let outer = ConvexPolygon::from_ccw_unchecked(outer_indices.iter().map(|&i| outer_pts[i]).collect());
        let (sin_alpha, cos_alpha) = v.alpha.sin_cos();
        Ok(Self {
            inner: project_points(p.vertices(), v.inner()),
            outer,
            outer_indices,
            sin_alpha,
            cos_alpha,
            shift: Vec2::new(v.x, v.y),
        })
    }

    pub fn outer(&self) -> &ConvexPolygon {
        &self.outer
    }

    /// Indices of the polyhedron vertices on the outer silhouette.
    pub fn outer_indices(&self) -> &[usize] {
        &self.outer_indices
    }

    /// Placed inner points for the copy scaled by `mu` about the origin.
    pub fn inner_points(&self, mu: f64) -> impl Iterator<Item = Vec2> + '_ {
        self.inner
            .iter()
            .map(move |&q| (q * mu).rotate_sc(self.sin_alpha, self.cos_alpha) + self.shift)
    }

    pub fn margin_at(&self, mu: f64) -> f64 {
        self.inner_points(mu)
            .map(|b| containment::margin(b, &self.outer))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn holds_at(&self, mu: f64) -> bool {
        self.inner_points(mu).all(|b| strictly_inside(b, &self.outer))
    }
}

/// Strict-containment margin of a septuple: the minimum over all inner
/// projected vertices of their distance to the outer hull boundary, negative
/// when some vertex is outside. Positive iff `v` is a solution.
///
/// Margins within `1e-7·R` of zero are recomputed in double-double
/// arithmetic and that value is returned instead.
pub fn verify(p: &Polyhedron, v: &SolutionSeptuple) -> f64 {
    let Ok(pl) = Placement::new(p, v) else {
        return f64::NEG_INFINITY;
    };
    let m = pl.margin_at(1.0);
    if m.abs() >= 1e-7 * p.circumradius() {
        return m;
    }
    precise_margin(p.vertices(), v, pl.outer_indices(), 1.0).to_f64()
}

/// Double-double evaluation of the margin of the inner copy scaled by `mu`,
/// against the polygon through `outer_indices` of the outer projection.
///
/// Using hull indices found in plain doubles is safe: if they pick too few
/// vertices the polygon shrinks, which can only make the test stricter.
pub fn precise_margin(vertices: &[Vec3], v: &SolutionSeptuple, outer_indices: &[usize], mu: f64) -> DD {
    let m1 = precise_projection(v.theta1, v.phi1);
    let m2 = precise_projection(v.theta2, v.phi2);
    let (sa, ca) = DD::from(v.alpha).sin_cos();
    let apply = |m: &[[DD; 3]; 2], p: Vec3| -> [DD; 2] {
        let (x, y, z) = (DD::from(p.x), DD::from(p.y), DD::from(p.z));
        [m[0][0] * x + m[0][1] * y + m[0][2] * z, m[1][0] * x + m[1][1] * y + m[1][2] * z]
    };
    let outer: Vec<[DD; 2]> = outer_indices.iter().map(|&i| apply(&m2, vertices[i])).collect();
    let mu = DD::from(mu);
    let (tx, ty) = (DD::from(v.x), DD::from(v.y));
    let mut best: Option<DD> = None;
    for &pv in vertices {
        let [u, w] = apply(&m1, pv);
        let (u, w) = (u * mu, w * mu);
        let bx = ca * u - sa * w + tx;
        let by = sa * u + ca * w + ty;
        for i in 0..outer.len() {
            let a0 = outer[i];
            let a1 = outer[(i + 1) % outer.len()];
            let (ex, ey) = (a1[0] - a0[0], a1[1] - a0[1]);
            let det = (a0[0] - bx) * (a1[1] - by) - (a0[1] - by) * (a1[0] - bx);
            let d = det / (ex * ex + ey * ey).sqrt();
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    best.unwrap_or(DD::ZERO)
}

fn precise_projection(theta: f64, phi: f64) -> [[DD; 3]; 2] {
    let (st, ct) = DD::from(theta).sin_cos();
    let (sp, cp) = DD::from(phi).sin_cos();
    [[-st, ct, DD::ZERO], [-(ct * cp), -(st * cp), sp]]
}

fn deadline(cfg: &SearchConfig) -> Option<Instant> {
    cfg.time_budget.map(|d| Instant::now() + d)
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Draws all seven parameters at random until one works: the naive search.
///
/// At most `max_batches · batch_size` trials; trial `i` uses its own stream,
/// and the lowest successful trial index wins, so the result does not depend
/// on the thread count.
pub fn solve_naive(p: &Polyhedron, cfg: &SearchConfig) -> Result<SolutionSeptuple> {
    cfg.validate()?;
    let r = p.circumradius();
    let symmetric = cfg.uses_symmetry(p);
    let deadline = deadline(cfg);
    let m = cfg.batch_size as u64;
    for batch in 0..cfg.max_batches as u64 {
        if expired(deadline) {
            break;
        }
        let hit = (batch * m..(batch + 1) * m).into_par_iter().find_map_first(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let a1 = draw_projection(&mut rng);
            let a2 = draw_projection(&mut rng);
            let alpha = rng.gen_range(0.0..2.0 * PI);
            let (x, y) = if symmetric {
                (0.0, 0.0)
            } else {
                (rng.gen_range(-r..=r), rng.gen_range(-r..=r))
            };
            let v = SolutionSeptuple::new(x, y, alpha, a1.theta, a1.phi, a2.theta, a2.phi);
            let pl = Placement::new(p, &v).ok()?;
            (pl.holds_at(1.0) && verify(p, &v) > 0.0).then_some(v)
        });
        if let Some(v) = hit {
            return Ok(v);
        }
    }
    Err(Error::NotFound)
}

struct Drawn {
    angles: ProjectionAngles,
    hull: ConvexPolygon,
}

/// Batched search: draw `M` projections, hull them once, and try every
/// ordered pair that passes the area/perimeter/diameter filters, most
/// promising area ratio first.
pub fn solve(p: &Polyhedron, cfg: &SearchConfig) -> Result<SolutionSeptuple> {
    cfg.validate()?;
    let symmetric = cfg.uses_symmetry(p);
    let deadline = deadline(cfg);
    let m = cfg.batch_size as u64;
    for batch in 0..cfg.max_batches as u64 {
        if expired(deadline) {
            break;
        }
        let drawn: Vec<Drawn> = (batch * m..(batch + 1) * m)
            .into_par_iter()
            .filter_map(|trial| {
                let angles = draw_projection(&mut trial_rng(cfg.seed, trial));
                let hull = convex_hull(&project_points(p.vertices(), angles)).ok()?;
                Some(Drawn { angles, hull })
            })
            .collect();

        let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
        for (j, inner) in drawn.iter().enumerate() {
            for (k, outer) in drawn.iter().enumerate() {
                if j != k && inner.hull.may_fit_inside(&outer.hull) {
                    pairs.push((j, k, outer.hull.area() / inner.hull.area()));
                }
            }
        }
        pairs.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));

        let hit = pairs.par_iter().find_map_first(|&(j, k, _)| {
            let (inner, outer) = (&drawn[j], &drawn[k]);
            let fit = if symmetric {
                fit_rotation(&inner.hull, &outer.hull, cfg.rotation_samples)
            } else {
                fit_rotation_translation(&inner.hull, &outer.hull, cfg.rotation_translation_samples)
            };
            if !fit.found {
                return None;
            }
            let v = SolutionSeptuple::new(
                fit.x,
                fit.y,
                fit.alpha,
                inner.angles.theta,
                inner.angles.phi,
                outer.angles.theta,
                outer.angles.phi,
            );
            (verify(p, &v) > 0.0).then_some(v)
        });
        if let Some(v) = hit {
            return Ok(v);
        }
    }
    Err(Error::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Polyhedron {
        let mut v = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        Polyhedron::new("cube", v, true).unwrap()
    }

    const CUBE_ROW: SolutionSeptuple =
        SolutionSeptuple::new(0.0, 0.0, 2.4840821, 1.9060829, 3.1415929, 5.8188256, 2.3004443);

    #[test]
    fn cube_row_verifies_and_perturbation_breaks_it() {
        assert!(verify(&cube(), &CUBE_ROW) > 0.0);
        let mut bad = CUBE_ROW;
        bad.phi2 += 1.0;
        assert!(verify(&cube(), &bad) < 0.0);
    }

    #[test]
    fn precise_margin_agrees_with_doubles() {
        let pl = Placement::new(&cube(), &CUBE_ROW).unwrap();
        let m = pl.margin_at(1.0);
        let d = precise_margin(cube().vertices(), &CUBE_ROW, pl.outer_indices(), 1.0).to_f64();
        assert!((m - d).abs() < 1e-12, "{m} vs {d}");
    }

    #[test]
    fn uniform_draw_limits() {
        assert!((projection_from_uniforms(0.0, 0.0).phi - PI / 2.0).abs() < 1e-15);
        assert!(projection_from_uniforms(0.0, 1.0 - 1e-12).phi < 2e-6);
    }

    #[test]
    fn zero_budget_is_not_found() {
        let cfg = SearchConfig {
            max_batches: 0,
            ..SearchConfig::default()
        };
        assert!(matches!(solve(&cube(), &cfg), Err(Error::NotFound)));
        assert!(matches!(solve_naive(&cube(), &cfg), Err(Error::NotFound)));
    }

    #[test]
    fn batch_of_one_is_rejected() {
        let cfg = SearchConfig {
            batch_size: 1,
            ..SearchConfig::default()
        };
        assert!(matches!(solve(&cube(), &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn cube_is_solved() {
        let v = solve(&cube(), &SearchConfig { seed: 3, ..SearchConfig::default() }).unwrap();
        assert!(verify(&cube(), &v) > 0.0);
        assert_eq!((v.x, v.y), (0.0, 0.0));
    }
}

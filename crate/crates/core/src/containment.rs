//! Strict containment of one convex polygon in another under rotation, or
//! rotation plus translation.
//!
//! The searches are Las Vegas: a reported fit has always passed the exact
//! determinant test at every inner vertex, but a fit may be missed when the
//! feasible set of angles is narrower than the sampling grid.
//!
//! The area/perimeter/diameter filters are left to callers
//! ([`ConvexPolygon::may_fit_inside`]); the fits here never rely on them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::hull::ConvexPolygon;
use crate::lp::{self, HalfSpace};

pub const DEFAULT_ROTATION_SAMPLES: usize = 1024;
pub const DEFAULT_ROTATION_TRANSLATION_SAMPLES: usize = 2048;
const GOLDEN_ITERS: usize = 48;

/// Outcome of a containment query: the placement `T_{x,y} ∘ R_alpha` of the
/// inner polygon and the minimum distance from its vertices to the outer
/// boundary. `margin` is 0 when nothing was found.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub found: bool,
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub margin: f64,
}

impl FitResult {
    pub const NOT_FOUND: FitResult = FitResult {
        found: false,
        x: 0.0,
        y: 0.0,
        alpha: 0.0,
        margin: 0.0,
    };
}

/// `det(A_i - B, A_{i+1} - B) > 0` on every edge of the CCW polygon `q`.
pub fn strictly_inside(b: Vec2, q: &ConvexPolygon) -> bool {
    q.edges().all(|(a0, a1)| (a0 - b).cross(a1 - b) > 0.0)
}

/// Signed distance-like margin: `min_i det(A_i - B, A_{i+1} - B) / |A_{i+1} - A_i|`.
/// Positive inside, zero on the boundary, negative outside.
pub fn margin(b: Vec2, q: &ConvexPolygon) -> f64 {
    q.edges()
        .map(|(a0, a1)| (a0 - b).cross(a1 - b) / (a1 - a0).norm())
        .fold(f64::INFINITY, f64::min)
}

/// True when every vertex of `p`, placed by `(alpha, x, y)`, is strictly
/// inside `q`.
pub fn placement_fits(p: &ConvexPolygon, q: &ConvexPolygon, alpha: f64, x: f64, y: f64) -> bool {
    let (s, c) = alpha.sin_cos();
    let t = Vec2::new(x, y);
    p.vertices().iter().all(|v| strictly_inside(v.rotate_sc(s, c) + t, q))
}

/// Minimum of [`margin`] over the placed vertices of `p`.
pub fn placement_margin(p: &ConvexPolygon, q: &ConvexPolygon, alpha: f64, x: f64, y: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let t = Vec2::new(x, y);
    p.vertices()
        .iter()
        .map(|v| margin(v.rotate_sc(s, c) + t, q))
        .fold(f64::INFINITY, f64::min)
}

/// Outer polygon as unit outward normals `n_i` and offsets `b_i = n_i·A_i`,
/// so the interior is `{z : n_i·z < b_i}`.
struct HalfPlanes {
    normals: Vec<Vec2>,
    offsets: Vec<f64>,
}

impl HalfPlanes {
    fn of(q: &ConvexPolygon) -> Self {
        let (normals, offsets) = q
            .edges()
            .map(|(a0, a1)| {
                let e = a1 - a0;
                let n = Vec2::new(e.y, -e.x) * (1.0 / e.norm());
                (n, n.dot(a0))
            })
            .unzip();
        Self { normals, offsets }
    }

    /// `min_i (b_i - max_j n_i·R_α p_j)`, the margin of `R_α P` without
    /// translation.
    fn rotation_margin(&self, p: &[Vec2], alpha: f64, scratch: &mut Vec<Vec2>) -> f64 {
        let (s, c) = alpha.sin_cos();
        scratch.clear();
        scratch.extend(p.iter().map(|v| v.rotate_sc(s, c)));
        let mut best = f64::INFINITY;
        for (n, b) in self.normals.iter().zip(&self.offsets) {
            let support = scratch.iter().map(|v| n.dot(*v)).fold(f64::NEG_INFINITY, f64::max);
            best = best.min(b - support);
        }
        best
    }

    /// Solves `max δ` s.t. `n_i·t + δ ≤ b_i - max_j n_i·R_α p_j`; returns
    /// `(t, δ*)`.
    fn translation_optimum(&self, p: &[Vec2], alpha: f64, bound: f64, seed: u64) -> (Vec2, f64) {
        let (s, c) = alpha.sin_cos();
        let rotated: Vec<Vec2> = p.iter().map(|v| v.rotate_sc(s, c)).collect();
        let cons: Vec<HalfSpace> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, b)| {
                let support = rotated.iter().map(|v| n.dot(*v)).fold(f64::NEG_INFINITY, f64::max);
                HalfSpace::new(vec![n.x, n.y, 1.0], b - support)
            })
            .collect();
        match lp::maximize(&[0.0, 0.0, 1.0], &cons, bound, seed) {
            lp::LpOutcome::Optimal(x) => (Vec2::new(x[0], x[1]), x[2]),
            // Cannot happen for a bounded polygon: δ is free to go negative.
            lp::LpOutcome::Infeasible => (Vec2::ZERO, f64::NEG_INFINITY),
        }
    }
}

fn lp_bound(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let reach = |poly: &ConvexPolygon| poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    4.0 * (reach(p) + reach(q)) + 1.0
}

/// Seed for the call-local LP stream, derived from the inputs.
fn seed_of(p: &ConvexPolygon, q: &ConvexPolygon) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in p.vertices().iter().chain(q.vertices()) {
        for bits in [v.x.to_bits(), v.y.to_bits()] {
            h ^= bits;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Builds a verified result or reports nothing. The margin is recomputed from
/// the placed polygon so it never relies on the optimizer's own numbers.
fn certify(p: &ConvexPolygon, q: &ConvexPolygon, alpha: f64, x: f64, y: f64) -> Option<FitResult> {
    let alpha = alpha.rem_euclid(2.0 * PI);
    if !placement_fits(p, q, alpha, x, y) {
        return None;
    }
    let m = placement_margin(p, q, alpha, x, y);
    (m > 0.0).then_some(FitResult {
        found: true,
        x,
        y,
        alpha,
        margin: m,
    })
}

/// Best translation of `p` into `q` with no rotation, by linear programming.
pub fn fit_translation(p: &ConvexPolygon, q: &ConvexPolygon) -> FitResult {
    let hp = HalfPlanes::of(q);
    let (t, delta) = hp.translation_optimum(p.vertices(), 0.0, lp_bound(p, q), seed_of(p, q));
    if delta > 0.0 {
        if let Some(fit) = certify(p, q, 0.0, t.x, t.y) {
            return fit;
        }
    }
    FitResult::NOT_FOUND
}

/// Maximizes `f` on `[lo, hi]` by golden-section search.
fn golden_max(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Sampled maximum of `f` over `samples` equally spaced angles of
/// `[0, period)`, refined around the best sample. Returns the grid optimum
/// and the refined optimum.
fn grid_then_golden(mut f: impl FnMut(f64) -> f64, period: f64, samples: usize) -> [(f64, f64); 2] {
    let samples = samples.max(1);
    let step = period / samples as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for k in 0..samples {
        let a = k as f64 * step;
        let v = f(a);
        if v > best.1 {
            best = (a, v);
        }
    }
    let refined = golden_max(&mut f, best.0 - step, best.0 + step, GOLDEN_ITERS);
    [best, refined]
}

/// Rotation-only fit about the origin. Both polygons are assumed centrally
/// symmetric, which makes the problem `π`-periodic in the angle.
pub fn fit_rotation(p: &ConvexPolygon, q: &ConvexPolygon, samples: usize) -> FitResult {
    let hp = HalfPlanes::of(q);
    let mut scratch = Vec::with_capacity(p.len());
    let candidates = grid_then_golden(|a| hp.rotation_margin(p.vertices(), a, &mut scratch), PI, samples);
    best_certified(p, q, candidates.iter().map(|&(a, m)| (a, Vec2::ZERO, m)))
}

/// Rotation plus translation: for each sampled angle the best translation is
/// an LP; the angle is then refined on the LP optimum.
pub fn fit_rotation_translation(p: &ConvexPolygon, q: &ConvexPolygon, samples: usize) -> FitResult {
    let hp = HalfPlanes::of(q);
    let bound = lp_bound(p, q);
    let seed = seed_of(p, q);
    let delta = |a: f64| hp.translation_optimum(p.vertices(), a, bound, seed).1;
    let candidates = grid_then_golden(delta, 2.0 * PI, samples);
    best_certified(
        p,
        q,
        candidates.iter().map(|&(a, _)| {
            let (t, d) = hp.translation_optimum(p.vertices(), a, bound, seed);
            (a, t, d)
        }),
    )
}

fn best_certified(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    candidates: impl Iterator<Item = (f64, Vec2, f64)>,
) -> FitResult {
    let mut best = FitResult::NOT_FOUND;
    for (a, t, m) in candidates {
        if m <= 0.0 {
            continue;
        }
        if let Some(fit) = certify(p, q, a, t.x, t.y) {
            if fit.margin > best.margin {
                best = fit;
            }
        }
    }
    best
}

/// Rotation-only margin of `R_alpha P` in `Q` (negative when it does not fit).
pub fn rotation_margin(p: &ConvexPolygon, q: &ConvexPolygon, alpha: f64) -> f64 {
    HalfPlanes::of(q).rotation_margin(p.vertices(), alpha, &mut Vec::new())
}

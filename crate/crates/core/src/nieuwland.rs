//! Nieuwland numbers of individual solutions and a hill-climbing improver.
//!
//! `μ(v, P)` is the largest scale `μ` for which the inner projection of `μP`,
//! placed by `v`, still lies strictly inside the outer projection of `P`.
//! Because the origin is interior to `P`, the set of such `μ` is an interval
//! starting at 0, so bisection finds its supremum.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::containment::margin;
use crate::error::{Error, Result};
use crate::geometry::{project_points, Vec2};
use crate::hull::convex_hull;
use crate::polyhedron::Polyhedron;
use crate::solver::{Placement, SolutionSeptuple};

pub const DEFAULT_MU_ITERS: usize = 60;
const MU_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NieuwlandResult {
    pub mu: f64,
    pub iterations: usize,
    /// Margin of the placement at the returned (largest holding) `μ`.
    pub margin_at_mu_minus: f64,
}

/// Whether `T_{x,y} ∘ R_α ∘ M_{θ₁,φ₁}(μP)` lies strictly inside `M_{θ₂,φ₂}(P)`.
pub fn inclusion_holds(p: &Polyhedron, v: &SolutionSeptuple, mu: f64) -> bool {
    Placement::new(p, v).is_ok_and(|pl| pl.holds_at(mu))
}

/// Bisection for `μ(v, P)` with `iters` halvings.
pub fn mu_of(p: &Polyhedron, v: &SolutionSeptuple, iters: usize) -> Result<NieuwlandResult> {
    let pl = Placement::new(p, v)?;
    if !pl.holds_at(MU_FLOOR) {
        return Err(Error::InvalidSolution(MU_FLOOR));
    }
    // μP cannot fit once the disc of radius μ·r_in around the inner origin
    // is wider than the outer projection, which sits in a disc of radius R.
    let inner_hull = convex_hull(&project_points(p.vertices(), v.inner()))?;
    let r_in = margin(Vec2::ZERO, &inner_hull);
    let mut lo = MU_FLOOR;
    let mut hi = 2.0 * p.circumradius() / r_in;
    debug_assert!(!pl.holds_at(hi));
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if pl.holds_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NieuwlandResult {
        mu: lo,
        iterations: iters,
        margin_at_mu_minus: pl.margin_at(lo),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImproveConfig {
    pub seed: u64,
    pub rounds: u64,
    /// Half-width of the uniform perturbation: radians for angles,
    /// multiples of the circumradius for `x`, `y`.
    pub initial_window: f64,
    pub shrink_factor: f64,
    /// Consecutive rejections before the window shrinks.
    pub stall_threshold: u32,
    /// The window restarts from `initial_window` once it falls below this.
    pub min_window: f64,
    pub time_budget: Option<Duration>,
    /// Stop as soon as `μ` reaches this value.
    pub target_mu: Option<f64>,
}

impl Default for ImproveConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            rounds: 100_000,
            initial_window: 0.05,
            shrink_factor: 0.5,
            stall_threshold: 200,
            min_window: 1e-10,
            time_budget: None,
            target_mu: None,
        }
    }
}

pub fn improve(p: &Polyhedron, v: &SolutionSeptuple, cfg: &ImproveConfig) -> Result<SolutionSeptuple> {
    improve_with_trace(p, v, cfg).map(|(best, _)| best)
}

/// Random-perturbation hill climbing on `μ(v, P)`. Returns the best septuple
/// and the sequence of accepted `μ` values, starting with the input's.
///
/// For point-symmetric `P` only the five angles move; `x` and `y` are left
/// exactly as given.
pub fn improve_with_trace(
    p: &Polyhedron,
    v: &SolutionSeptuple,
    cfg: &ImproveConfig,
) -> Result<(SolutionSeptuple, Vec<f64>)> {
    if !(cfg.shrink_factor > 0.0 && cfg.shrink_factor < 1.0) {
        return Err(Error::Domain(format!(
            "shrink factor must lie in (0, 1), got {}",
            cfg.shrink_factor
        )));
    }
    let mut best = *v;
    let mut best_mu = mu_of(p, v, DEFAULT_MU_ITERS)?.mu;
    let mut trace = vec![best_mu];
    let deadline = cfg.time_budget.map(|d| Instant::now() + d);
    let free = if p.is_point_symmetric() { 2 } else { 0 };
    let r = p.circumradius();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut window = cfg.initial_window;
    let mut stall = 0;

    for round in 0..cfg.rounds {
        if cfg.target_mu.is_some_and(|t| best_mu >= t) {
            break;
        }
        if round % 64 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let mut a = best.to_array();
        for (i, value) in a.iter_mut().enumerate().skip(free) {
            let scale = if i < 2 { r } else { 1.0 };
            *value += rng.gen_range(-window..=window) * scale;
        }
        let cand = SolutionSeptuple::from_array(a);
        let accepted = match mu_of(p, &cand, DEFAULT_MU_ITERS) {
            Ok(res) if res.mu > best_mu => {
                best = cand;
                best_mu = res.mu;
                trace.push(best_mu);
                true
            }
            _ => false,
        };
        if accepted {
            stall = 0;
        } else {
            stall += 1;
            if stall >= cfg.stall_threshold {
                stall = 0;
                window *= cfg.shrink_factor;
                if window < cfg.min_window {
                    window = cfg.initial_window;
                }
            }
        }
    }
    Ok((best, trace))
}

//! Monte-Carlo estimates of Rupertness: the probability that two uniformly
//! random projections of a point-symmetric polyhedron can be completed to a
//! solution by some rotation.
//!
//! Each trial relies on the sampled rotation search, which may miss narrow
//! fits, so the estimate is biased downward and never upward.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::containment::{fit_rotation, DEFAULT_ROTATION_SAMPLES};
use crate::error::{Error, Result};
use crate::geometry::project_points;
use crate::hull::convex_hull;
use crate::polyhedron::Polyhedron;
use crate::rng::trial_rng;
use crate::solver::draw_projection;
use crate::stats::clopper_pearson;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RupertnessEstimate {
    pub n: u64,
    pub k: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `1 - alpha`.
    pub confidence: f64,
}

/// One flat result row, as written by the CLI in CSV or JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RupertnessRow {
    pub name: String,
    pub n: u64,
    pub k: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub alpha: f64,
    pub seed: u64,
    pub samples: usize,
}

impl RupertnessRow {
    pub const CSV_HEADER: &'static str = "name,n,k,fraction,ci_low,ci_high,alpha,seed,samples";

    pub fn new(name: &str, est: &RupertnessEstimate, alpha: f64, seed: u64, samples: usize) -> Self {
        Self {
            name: name.to_string(),
            n: est.n,
            k: est.k,
            fraction: est.point_estimate,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            alpha,
            seed,
            samples,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.name, self.n, self.k, self.fraction, self.ci_low, self.ci_high, self.alpha, self.seed, self.samples
        )
    }
}

fn require_symmetric(p: &Polyhedron) -> Result<()> {
    if p.is_point_symmetric() {
        Ok(())
    } else {
        Err(Error::NotPointSymmetric(p.name().to_string()))
    }
}

/// Draws two projections and asks whether some rotation fits the first
/// strictly inside the second.
pub fn rupertness_trial<R: Rng + ?Sized>(p: &Polyhedron, rng: &mut R, samples: usize) -> Result<bool> {
    require_symmetric(p)?;
    Ok(trial(p, rng, samples))
}

fn trial<R: Rng + ?Sized>(p: &Polyhedron, rng: &mut R, samples: usize) -> bool {
    let a1 = draw_projection(rng);
    let a2 = draw_projection(rng);
    let (Ok(inner), Ok(outer)) = (
        convex_hull(&project_points(p.vertices(), a1)),
        convex_hull(&project_points(p.vertices(), a2)),
    ) else {
        return false;
    };
    inner.may_fit_inside(&outer) && fit_rotation(&inner, &outer, samples).found
}

/// `n` independent trials with the default rotation sampling.
pub fn estimate_rupertness(p: &Polyhedron, n: u64, alpha: f64, seed: u64) -> Result<RupertnessEstimate> {
    estimate_rupertness_with(p, n, alpha, seed, DEFAULT_ROTATION_SAMPLES)
}

/// Trial `i` draws from its own stream, so the count does not depend on how
/// the work is split across threads.
pub fn estimate_rupertness_with(
    p: &Polyhedron,
    n: u64,
    alpha: f64,
    seed: u64,
    samples: usize,
) -> Result<RupertnessEstimate> {
    require_symmetric(p)?;
    // Reject bad n or alpha before spending time on trials.
    clopper_pearson(0, n, alpha)?;
    let k = (0..n)
        .into_par_iter()
        .filter(|&i| trial(p, &mut trial_rng(seed, i), samples))
        .count() as u64;
    let (ci_low, ci_high) = clopper_pearson(k, n, alpha)?;
    Ok(RupertnessEstimate {
        n,
        k,
        point_estimate: k as f64 / n as f64,
        ci_low,
        ci_high,
        confidence: 1.0 - alpha,
    })
}

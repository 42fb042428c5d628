//! Oracles and checks shared by the property tests and the acceptance run.
#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::Rng;
use rupert_core::catalog;
use rupert_core::containment::{fit_rotation, fit_rotation_translation, fit_translation, placement_fits, placement_margin};
use rupert_core::geometry::{projection_matrix, ProjectionAngles, Vec2};
use rupert_core::hull::{convex_hull, hull_indices, ConvexPolygon};
use rupert_core::nieuwland::inclusion_holds;
use rupert_core::{Polyhedron, SolutionRecord, SolutionSeptuple};

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Every shipped golden record with its polyhedron, in file order.
pub fn goldens() -> Vec<(SolutionRecord, Polyhedron)> {
    let dir = repo_root().join("goldens");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("goldens directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|path| {
            let record = SolutionRecord::load(path).unwrap();
            let p = match &record.polyhedron_file {
                Some(f) => catalog::load(dir.join(f), false).unwrap(),
                None => catalog::get(&record.solid).unwrap(),
            };
            (record, p)
        })
        .collect()
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Points closed under negation.
pub fn symmetric_points<R: Rng>(rng: &mut R, half: usize) -> Vec<Vec2> {
    let pts = random_points(rng, half);
    pts.iter().copied().chain(pts.iter().map(|&p| -p)).collect()
}

/// Extreme points by brute force: `i` is a hull vertex iff some line
/// through it and another point has every remaining point strictly on one
/// side. Exact for points in general position.
pub fn hull_oracle(pts: &[Vec2]) -> BTreeSet<usize> {
    let n = pts.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = pts[j] - pts[i];
            if (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| d.cross(pts[k] - pts[i]) > 0.0)
            {
                out.insert(i);
                out.insert(j);
            }
        }
    }
    out
}

pub fn check_hull(pts: &[Vec2]) -> Result<(), String> {
    let got = hull_indices(pts).map_err(|e| e.to_string())?;
    let want = hull_oracle(pts);
    let got_set: BTreeSet<usize> = got.iter().copied().collect();
    if got_set != want {
        return Err(format!("hull {got:?} vs oracle {want:?}"));
    }
    let k = got.len();
    for i in 0..k {
        let (a, b, c) = (pts[got[i]], pts[got[(i + 1) % k]], pts[got[(i + 2) % k]]);
        if (b - a).cross(c - b) <= 0.0 {
            return Err(format!("not counter-clockwise at {i}"));
        }
    }
    Ok(())
}

pub fn check_orthonormal(theta: f64, phi: f64) -> Result<(), String> {
    let m = projection_matrix(ProjectionAngles::new(theta, phi));
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let x = ProjectionAngles::new(theta, phi).direction().to_array();
    let checks = [
        (dot(m[0], m[0]), 1.0),
        (dot(m[1], m[1]), 1.0),
        (dot(m[0], m[1]), 0.0),
        (dot(m[0], x), 0.0),
        (dot(m[1], x), 0.0),
    ];
    for (got, want) in checks {
        if (got - want).abs() > 1e-14 {
            return Err(format!("({theta}, {phi}): {got} != {want}"));
        }
    }
    Ok(())
}

/// Every reported fit passes the strict determinant test and the three
/// necessary filters. When the filters reject the pair no fit may be found.
pub fn check_fit(p: &ConvexPolygon, q: &ConvexPolygon, samples: usize) -> Result<(), String> {
    let fits = [
        ("translation", fit_translation(p, q)),
        ("rotation", fit_rotation(p, q, samples)),
        ("rotation+translation", fit_rotation_translation(p, q, samples)),
    ];
    for (kind, fit) in fits {
        if !fit.found {
            continue;
        }
        if !placement_fits(p, q, fit.alpha, fit.x, fit.y) {
            return Err(format!("{kind} fit fails the determinant test: {fit:?}"));
        }
        let m = placement_margin(p, q, fit.alpha, fit.x, fit.y);
        if !(m > 0.0) || (m - fit.margin).abs() > 1e-12 {
            return Err(format!("{kind} margin {} disagrees with recomputed {m}", fit.margin));
        }
        if !p.may_fit_inside(q) {
            return Err(format!("{kind} fit found although the area/perimeter/diameter filter fails"));
        }
    }
    Ok(())
}

/// Inclusion at `μ` implies inclusion at every smaller positive scale.
pub fn check_mu_monotone(p: &Polyhedron, v: &SolutionSeptuple, mu_lo: f64, mu_hi: f64) -> Result<(), String> {
    if inclusion_holds(p, v, mu_hi) && !inclusion_holds(p, v, mu_lo) {
        return Err(format!("{}: holds at {mu_hi} but not at {mu_lo} for {v:?}", p.name()));
    }
    Ok(())
}

pub fn random_septuple<R: Rng>(rng: &mut R, p: &Polyhedron) -> SolutionSeptuple {
    use std::f64::consts::PI;
    let r = if p.is_point_symmetric() { 0.0 } else { 0.2 * p.circumradius() };
    let mut xy = || if r > 0.0 { rng.gen_range(-r..r) } else { 0.0 };
    let (x, y) = (xy(), xy());
    SolutionSeptuple::new(
        x,
        y,
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..PI),
    )
}

pub fn random_polygon<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Option<ConvexPolygon> {
    let pts: Vec<Vec2> = random_points(rng, n).into_iter().map(|p| p * scale).collect();
    convex_hull(&pts).ok()
}

/// Binomial pmf for `k = 0..=n`, each term built in log space.
fn binomial_pmfs(n: u64, p: f64) -> Vec<f64> {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut log_choose = 0.0f64;
    for k in 0..=n {
        if k > 0 {
            log_choose += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        out.push((log_choose + k as f64 * lp + (n - k) as f64 * lq).exp());
    }
    out
}

fn upper_tail(k: u64, n: u64, p: f64) -> f64 {
    binomial_pmfs(n, p)[k as usize..].iter().sum()
}

fn lower_tail(k: u64, n: u64, p: f64) -> f64 {
    binomial_pmfs(n, p)[..=k as usize].iter().sum()
}

fn bisect(mut f: impl FnMut(f64) -> bool) -> f64 {
    // f is true on [0, root) and false above.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact interval from its definition: the lower bound solves
/// `P(X ≥ k) = α/2`, the upper `P(X ≤ k) = α/2`.
pub fn clopper_pearson_oracle(k: u64, n: u64, alpha: f64) -> (f64, f64) {
    let half = alpha / 2.0;
    let lo = if k == 0 { 0.0 } else { bisect(|p| upper_tail(k, n, p) < half) };
    let hi = if k == n { 1.0 } else { bisect(|p| lower_tail(k, n, p) > half) };
    (lo, hi)
}

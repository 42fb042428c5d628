//! Seidel's randomized incremental linear programming for a handful of
//! variables.
//!
//! Maximizes `c·x` subject to `a_i·x ≤ b_i` inside the box `|x_j| ≤ bound`.
//! The box keeps every subproblem bounded; callers pick `bound` large enough
//! that it never binds at the optimum they care about. Expected running time
//! is `O(d! · m)` for `m` constraints in `d` dimensions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Half-space `a·x ≤ b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub a: Vec<f64>,
    pub b: f64,
}

impl HalfSpace {
    pub fn new(a: Vec<f64>, b: f64) -> Self {
        Self { a, b }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Vec<f64>),
    Infeasible,
}

impl LpOutcome {
    pub fn optimum(self) -> Option<Vec<f64>> {
        match self {
            LpOutcome::Optimal(x) => Some(x),
            LpOutcome::Infeasible => None,
        }
    }
}

const FEAS_EPS: f64 = 1e-11;

/// Solves the LP. The constraint order is shuffled with a ChaCha stream seeded
/// by `seed`, so equal inputs give bit-identical outputs.
pub fn maximize(c: &[f64], constraints: &[HalfSpace], bound: f64, seed: u64) -> LpOutcome {
    let d = c.len();
    assert!(d >= 1, "LP needs at least one variable");
    assert!(
        constraints.iter().all(|h| h.a.len() == d),
        "constraint dimension mismatch"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<&HalfSpace> = constraints.iter().collect();
    order.shuffle(&mut rng);
    let owned: Vec<HalfSpace> = order.into_iter().cloned().collect();
    match solve(c, &owned, bound) {
        Some(x) => LpOutcome::Optimal(x),
        None => LpOutcome::Infeasible,
    }
}

fn violated(h: &HalfSpace, x: &[f64]) -> bool {
    let lhs: f64 = h.a.iter().zip(x).map(|(a, v)| a * v).sum();
    let scale = 1.0 + h.b.abs() + h.a.iter().zip(x).map(|(a, v)| (a * v).abs()).sum::<f64>();
    lhs > h.b + FEAS_EPS * scale
}

fn solve(c: &[f64], cons: &[HalfSpace], bound: f64) -> Option<Vec<f64>> {
    let d = c.len();
    if d == 1 {
        return solve_1d(c[0], cons, bound);
    }
    // Optimum of the bare box.
    let mut x: Vec<f64> = c
        .iter()
        .map(|&cj| if cj < 0.0 { -bound } else { bound })
        .collect();
    for i in 0..cons.len() {
        if !violated(&cons[i], &x) {
            continue;
        }
        x = solve_on_hyperplane(c, &cons[i], &cons[..i], bound)?;
    }
    Some(x)
}

fn solve_1d(c: f64, cons: &[HalfSpace], bound: f64) -> Option<Vec<f64>> {
    let (mut lo, mut hi) = (-bound, bound);
    for h in cons {
        let a = h.a[0];
        let scale = 1.0 + h.b.abs();
        if a.abs() <= 1e-300 {
            if h.b < -FEAS_EPS * scale {
                return None;
            }
            continue;
        }
        let t = h.b / a;
        if a > 0.0 {
            hi = hi.min(t);
        } else {
            lo = lo.max(t);
        }
    }
    if lo > hi + FEAS_EPS * (1.0 + lo.abs().max(hi.abs())) {
        return None;
    }
    let x = if c < 0.0 { lo } else { hi };
    Some(vec![x.clamp(lo.min(hi), hi.max(lo))])
}

/// Restricts the problem to `h.a·x = h.b` by eliminating the variable with
/// the largest coefficient, solves the reduced LP over `prev` (plus the box
/// bounds of the eliminated variable) and lifts the result back.
fn solve_on_hyperplane(c: &[f64], h: &HalfSpace, prev: &[HalfSpace], bound: f64) -> Option<Vec<f64>> {
    let d = c.len();
    let p = (0..d)
        .max_by(|&i, &j| h.a[i].abs().total_cmp(&h.a[j].abs()))
        .unwrap();
    let ap = h.a[p];
    if ap.abs() <= 1e-300 {
        // 0·x ≤ b with b < 0: the constraint itself is infeasible.
        return None;
    }
    let keep: Vec<usize> = (0..d).filter(|&j| j != p).collect();
    // x_p = (b - Σ a_j x_j) / a_p
    let coef: Vec<f64> = keep.iter().map(|&j| h.a[j] / ap).collect();
    let off = h.b / ap;

    let project = |g: &HalfSpace| -> HalfSpace {
        let gp = g.a[p];
        HalfSpace {
            a: keep.iter().zip(&coef).map(|(&j, k)| g.a[j] - gp * k).collect(),
            b: g.b - gp * off,
        }
    };

    let mut reduced: Vec<HalfSpace> = Vec::with_capacity(prev.len() + 2);
    // Box bounds of the eliminated variable: x_p ≤ bound and -x_p ≤ bound.
    reduced.push(HalfSpace {
        a: coef.iter().map(|k| -k).collect(),
        b: bound - off,
    });
    reduced.push(HalfSpace {
        a: coef.clone(),
        b: bound + off,
    });
    reduced.extend(prev.iter().map(project));

    let cp = c[p];
    let reduced_c: Vec<f64> = keep.iter().zip(&coef).map(|(&j, k)| c[j] - cp * k).collect();
    let y = solve(&reduced_c, &reduced, bound)?;

    let mut x = vec![0.0; d];
    let mut xp = off;
    for ((&j, k), yj) in keep.iter().zip(&coef).zip(&y) {
        x[j] = *yj;
        xp -= k * yj;
    }
    x[p] = xp;
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(a: &[f64], b: f64) -> HalfSpace {
        HalfSpace::new(a.to_vec(), b)
    }

    #[test]
    fn triangle_vertex() {
        // max x + y s.t. x ≤ 1, y ≤ 2, x + y ≤ 2.5
        let cons = [hs(&[1.0, 0.0], 1.0), hs(&[0.0, 1.0], 2.0), hs(&[1.0, 1.0], 2.5)];
        let x = maximize(&[1.0, 1.0], &cons, 1e3, 1).optimum().unwrap();
        assert!((x[0] + x[1] - 2.5).abs() < 1e-9);
        assert!(x[0] <= 1.0 + 1e-9 && x[1] <= 2.0 + 1e-9);
    }

    #[test]
    fn infeasible_pair() {
        let cons = [hs(&[1.0, 0.0], -1.0), hs(&[-1.0, 0.0], -1.0)];
        assert_eq!(maximize(&[0.0, 1.0], &cons, 10.0, 3), LpOutcome::Infeasible);
    }

    #[test]
    fn chebyshev_center_of_square() {
        // max δ s.t. ±t_x + δ ≤ 1, ±t_y + δ ≤ 1
        let cons = [
            hs(&[1.0, 0.0, 1.0], 1.0),
            hs(&[-1.0, 0.0, 1.0], 1.0),
            hs(&[0.0, 1.0, 1.0], 1.0),
            hs(&[0.0, -1.0, 1.0], 1.0),
        ];
        for seed in 0..10 {
            let x = maximize(&[0.0, 0.0, 1.0], &cons, 100.0, seed).optimum().unwrap();
            assert!((x[2] - 1.0).abs() < 1e-9, "{x:?}");
            assert!(x[0].abs() < 1e-9 && x[1].abs() < 1e-9, "{x:?}");
        }
    }

    #[test]
    fn box_binds_when_unconstrained() {
        let x = maximize(&[1.0, -1.0], &[], 5.0, 0).optimum().unwrap();
        assert_eq!(x, vec![5.0, -5.0]);
    }

    /// Brute force: the optimum of a bounded 2-variable LP sits at the
    /// intersection of two tight constraints (box sides included).
    fn brute_2d(c: [f64; 2], cons: &[HalfSpace], bound: f64) -> Option<f64> {
        let mut all = cons.to_vec();
        all.push(hs(&[1.0, 0.0], bound));
        all.push(hs(&[-1.0, 0.0], bound));
        all.push(hs(&[0.0, 1.0], bound));
        all.push(hs(&[0.0, -1.0], bound));
        let mut best: Option<f64> = None;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let (a, b) = (&all[i], &all[j]);
                let det = a.a[0] * b.a[1] - a.a[1] * b.a[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (a.b * b.a[1] - a.a[1] * b.b) / det;
                let y = (a.a[0] * b.b - a.b * b.a[0]) / det;
                if all.iter().all(|h| h.a[0] * x + h.a[1] * y <= h.b + 1e-9) {
                    let v = c[0] * x + c[1] * y;
                    best = Some(best.map_or(v, |bv: f64| bv.max(v)));
                }
            }
        }
        best
    }

    #[test]
    fn agrees_with_vertex_enumeration() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for case in 0..300 {
            let m = rng.gen_range(1..12);
            let cons: Vec<HalfSpace> = (0..m)
                .map(|_| {
                    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    hs(&[t.cos(), t.sin()], rng.gen_range(-1.0..3.0))
                })
                .collect();
            let c = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let got = maximize(&c, &cons, 50.0, case);
            let want = brute_2d(c, &cons, 50.0);
            match (got, want) {
                (LpOutcome::Optimal(x), Some(v)) => {
                    assert!((c[0] * x[0] + c[1] * x[1] - v).abs() < 1e-7, "case {case}")
                }
                (LpOutcome::Infeasible, None) => {}
                (g, w) => panic!("case {case}: {g:?} vs {w:?}"),
            }
        }
    }
}

//! Silhouettes: the cyclic sequence of vertex indices on the boundary of a
//! projection's convex hull.
//!
//! Indices are stored 0-based and shown 1-based. The canonical form rotates
//! the cycle so its smallest index comes first, keeping the orientation.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{project_points, ProjectionAngles};
use crate::hull::{bounding_box, hull_indices};
use crate::polyhedron::Polyhedron;
use crate::rng::trial_rng;
use crate::solver::draw_projection;

/// Largest `n` accepted by [`count_cycles`].
pub const COUNT_LIMIT: usize = 20;
/// Largest `n` accepted by [`enumerate_cycles`].
pub const ENUMERATE_LIMIT: usize = 12;

/// Two projected vertices closer than this (relative to the projection's
/// extent) count as the same hull point.
const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Silhouette {
    cycle: Vec<usize>,
}

impl Silhouette {
    /// Canonicalizes a cycle of distinct 0-based indices.
    pub fn new(mut cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::DegenerateInput("empty cycle".into()));
        }
        let mut seen = cycle.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegenerateInput(format!("repeated index in cycle {cycle:?}")));
        }
        let pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        cycle.rotate_left(pos);
        Ok(Self { cycle })
    }

    /// Parses `1,2,3` or `(1,2,3)` with 1-based indices.
    pub fn parse_one_based(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let cycle = inner
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::Parse(format!("bad silhouette index '{}'", t.trim()))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cycle)
    }

    /// 0-based vertex indices.
    pub fn indices(&self) -> &[usize] {
        &self.cycle
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.cycle.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

impl fmt::Display for Silhouette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Silhouette of `P` seen along `angles`. Vertices that project onto the
/// same hull point (a cube seen along an axis, say) are represented by the
/// lowest index among them.
pub fn silhouette_of(p: &Polyhedron, angles: ProjectionAngles) -> Result<Silhouette> {
    let (cycle, _) = hull_with_coincidences(p, angles)?;
    Silhouette::new(cycle)
}

/// Like [`silhouette_of`], but coinciding hull points are an error.
pub fn silhouette_of_strict(p: &Polyhedron, angles: ProjectionAngles) -> Result<Silhouette> {
    let (cycle, clash) = hull_with_coincidences(p, angles)?;
    if let Some((i, j)) = clash {
        return Err(Error::AmbiguousSilhouette(i + 1, j + 1));
    }
    Silhouette::new(cycle)
}

type Coincidence = Option<(usize, usize)>;

/// Hull indices, each replaced by the lowest index projecting within
/// tolerance of it, plus the first such coincidence found.
fn hull_with_coincidences(
    p: &Polyhedron,
    angles: ProjectionAngles,
) -> Result<(Vec<usize>, Coincidence)> {
    let pts = project_points(p.vertices(), angles);
    let hull = hull_indices(&pts)?;
    let (lo, hi) = bounding_box(&pts);
    let tol = COINCIDENCE_TOL * (hi - lo).norm();
    let mut clash = None;
    let cycle = hull
        .iter()
        .map(|&h| {
            let mut rep = h;
            for (j, q) in pts.iter().enumerate() {
                if j != h && q.distance(pts[h]) <= tol {
                    clash.get_or_insert((h.min(j), h.max(j)));
                    rep = rep.min(j);
                }
            }
            rep
        })
        .collect();
    Ok((cycle, clash))
}

/// `|S_n| = Σ_{k=1..n} C(n,k)·(k-1)!`, the number of cycles on nonempty
/// subsets of `n` labels.
pub fn count_cycles(n: usize) -> Result<u128> {
    if n > COUNT_LIMIT {
        return Err(Error::TooLarge { n, max: COUNT_LIMIT });
    }
    let mut total: u128 = 0;
    let mut binom: u128 = 1; // C(n, k)
    let mut fact: u128 = 1; // (k-1)!
    for k in 1..=n as u128 {
        binom = binom * (n as u128 - k + 1) / k;
        if k > 1 {
            fact *= k - 1;
        }
        total += binom * fact;
    }
    Ok(total)
}

/// Lazily enumerates every cycle of every nonempty subset of `0..n`, each
/// once, in canonical form.
pub fn enumerate_cycles(n: usize) -> Result<CycleIter> {
    if n > ENUMERATE_LIMIT {
        return Err(Error::TooLarge { n, max: ENUMERATE_LIMIT });
    }
    Ok(CycleIter {
        n,
        mask: 0,
        current: None,
    })
}

/// Iterator behind [`enumerate_cycles`]: subsets by bitmask, and for each
/// subset the permutations of all but its smallest element in lexicographic
/// order.
pub struct CycleIter {
    n: usize,
    mask: u32,
    current: Option<(usize, Vec<usize>)>,
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Iterator for CycleIter {
    type Item = Silhouette;

    fn next(&mut self) -> Option<Silhouette> {
        loop {
            if let Some((first, rest)) = &mut self.current {
                let mut cycle = vec![*first];
                cycle.extend_from_slice(rest);
                if !next_permutation(rest) {
                    self.current = None;
                }
                return Some(Silhouette { cycle });
            }
            self.mask += 1;
            if self.mask >= 1u32 << self.n {
                return None;
            }
            let members: Vec<usize> = (0..self.n).filter(|&i| self.mask & (1 << i) != 0).collect();
            self.current = Some((members[0], members[1..].to_vec()));
        }
    }
}

/// Silhouettes observed over `samples` uniformly random projections, with
/// how often each was seen.
pub fn discover_silhouettes(p: &Polyhedron, samples: u64, seed: u64) -> BTreeMap<Silhouette, u64> {
    (0..samples)
        .into_par_iter()
        .filter_map(|i| silhouette_of(p, draw_projection(&mut trial_rng(seed, i))).ok())
        .fold(BTreeMap::new, |mut acc, s| {
            *acc.entry(s).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (s, c) in b {
                *a.entry(s).or_insert(0) += c;
            }
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn canonical_form_keeps_orientation() {
        let s = Silhouette::new(vec![4, 2, 7]).unwrap();
        assert_eq!(s.indices(), &[2, 7, 4]);
        assert_eq!(s.to_string(), "(3,8,5)");
        assert_ne!(s, Silhouette::new(vec![2, 4, 7]).unwrap());
        assert!(Silhouette::new(vec![1, 1]).is_err());
        assert_eq!(Silhouette::parse_one_based("(3,8,5)").unwrap(), s);
    }

    #[test]
    fn small_cycle_counts() {
        assert_eq!(count_cycles(1).unwrap(), 1);
        assert_eq!(count_cycles(3).unwrap(), 8);
        assert_eq!(count_cycles(4).unwrap(), 24);
        assert!(count_cycles(21).is_err());
    }

    #[test]
    fn s3_is_the_listed_set() {
        let got: BTreeSet<String> = enumerate_cycles(3).unwrap().map(|s| s.to_string()).collect();
        let want: BTreeSet<String> = ["(1)", "(2)", "(3)", "(1,2)", "(2,3)", "(1,3)", "(1,2,3)", "(1,3,2)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
        assert!(enumerate_cycles(13).is_err());
    }
}

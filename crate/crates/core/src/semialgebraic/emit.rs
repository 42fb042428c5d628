//! Integer polynomial systems whose real solutions are the Rupert solutions
//! with a given outer silhouette.
//!
//! For a silhouette `s` of length `k` and each vertex `P_j`, the condition is
//! `det(Q_{s_i} - P_j, Q_{s_{i+1}} - P_j) > 0` for `i = 1..k`, where `Q` is
//! the outer projection and `P_j` the placed inner one. The angles are
//! replaced by `t = tan(angle/2)` through
//! `(cos, sin) = ((1 - t²)/(1 + t²), 2t/(1 + t²))`: `a` for `α`, `b1`, `b2`
//! for `θ₁`, `θ₂` and `c1`, `c2` for `φ₁`, `φ₂`. Every point coordinate is
//! then a rational function with denominator dividing
//! `D = (1+a²)(1+b1²)(1+b2²)(1+c1²)(1+c2²)`; multiplying both columns by `D`
//! multiplies the determinant by `D² > 0`, leaving integer polynomials of
//! total degree at most 22.
//!
//! The angle `π` has no finite `t`, so solutions with an angle of exactly
//! `π` are not represented.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::silhouette::Silhouette;
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::polyhedron::Polyhedron;

/// The seven variables, in storage order.
pub const VARIABLES: [&str; 7] = ["x", "y", "a", "b1", "b2", "c1", "c2"];
const X: usize = 0;
const Y: usize = 1;
const A: usize = 2;
const B1: usize = 3;
const B2: usize = 4;
const C1: usize = 5;
const C2: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    /// The seven standard names followed by any algebraic extras.
    pub variables: Vec<String>,
    pub silhouette: Silhouette,
    pub vertices: usize,
    /// Each must be `> 0`; ordered by vertex `j`, then silhouette edge `i`.
    pub inequalities: Vec<Poly>,
    /// Each must be `= 0` (minimal polynomials of algebraic coordinates).
    pub equations: Vec<Poly>,
}

/// Metadata line of a `.polysys` file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolySysHeader {
    pub variables: Vec<String>,
    /// 1-based.
    pub silhouette: Vec<usize>,
    pub vertices: usize,
    pub inequalities: usize,
    pub equations: usize,
    pub max_degree: u32,
    /// Decimal string; may exceed every machine integer.
    pub max_abs_coefficient: String,
}

impl PolySystem {
    pub fn max_degree(&self) -> u32 {
        self.inequalities.iter().chain(&self.equations).map(Poly::degree).max().unwrap_or(0)
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.inequalities
            .iter()
            .chain(&self.equations)
            .map(Poly::max_abs_coefficient)
            .max()
            .unwrap_or_default()
    }

    pub fn header(&self) -> PolySysHeader {
        PolySysHeader {
            variables: self.variables.clone(),
            silhouette: self.silhouette.one_based(),
            vertices: self.vertices,
            inequalities: self.inequalities.len(),
            equations: self.equations.len(),
            max_degree: self.max_degree(),
            max_abs_coefficient: self.max_abs_coefficient().to_string(),
        }
    }

    /// The `.polysys` text: a `# {json}` header line, then one
    /// `<poly> > 0` line per inequality and one `<poly> = 0` line per
    /// equation.
    pub fn to_polysys(&self) -> String {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let mut out = format!(
            "# {}\n",
            serde_json::to_string(&self.header()).expect("header serializes")
        );
        for p in &self.inequalities {
            out.push_str(&p.to_string_with(&names));
            out.push_str(" > 0\n");
        }
        for p in &self.equations {
            out.push_str(&p.to_string_with(&names));
            out.push_str(" = 0\n");
        }
        out
    }

    pub fn parse_polysys(text: &str) -> Result<PolySystem> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().ok_or_else(|| Error::Parse("empty .polysys input".into()))?;
        let json = first
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("missing '# {...}' header line".into()))?;
        let header: PolySysHeader = serde_json::from_str(json.trim())?;
        let names: Vec<&str> = header.variables.iter().map(String::as_str).collect();
        let silhouette = Silhouette::new(
            header
                .silhouette
                .iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("silhouette index 0".into())))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let mut inequalities = Vec::new();
        let mut equations = Vec::new();
        for line in lines {
            if let Some(lhs) = line.strip_suffix("> 0") {
                inequalities.push(Poly::parse(lhs, &names)?);
            } else if let Some(lhs) = line.strip_suffix("= 0") {
                equations.push(Poly::parse(lhs, &names)?);
            } else {
                return Err(Error::Parse(format!("line is neither '> 0' nor '= 0': {line}")));
            }
        }
        if inequalities.len() != header.inequalities || equations.len() != header.equations {
            return Err(Error::Parse("line counts disagree with the header".into()));
        }
        Ok(PolySystem {
            variables: header.variables,
            silhouette,
            vertices: header.vertices,
            inequalities,
            equations,
        })
    }
}

/// Emits the system for a polyhedron whose coordinates are all integers.
pub fn emit_system(p: &Polyhedron, s: &Silhouette) -> Result<PolySystem> {
    let coords = integer_coordinates(p.vertices())?;
    emit_system_integer(&coords, s)
}

/// Emits the system for explicit integer coordinates.
pub fn emit_system_integer(coords: &[[BigInt; 3]], s: &Silhouette) -> Result<PolySystem> {
    let n = VARIABLES.len();
    let polys: Vec<[Poly; 3]> = coords
        .iter()
        .map(|c| c.clone().map(|v| Poly::constant(n, v)))
        .collect();
    build(&polys, VARIABLES.iter().map(|s| s.to_string()).collect(), Vec::new(), s)
}

/// Algebraic mode: coordinates are integer polynomials in `extra` variables
/// (e.g. `phi` for the golden ratio), constrained by the caller's minimal
/// polynomials, which are appended as `= 0` equations. Coordinates and
/// minimal polynomials are parsed over the seven standard names plus
/// `extra`.
pub fn emit_system_algebraic(
    coords: &[[String; 3]],
    extra: &[String],
    min_polys: &[String],
    s: &Silhouette,
) -> Result<PolySystem> {
    let mut variables: Vec<String> = VARIABLES.iter().map(|s| s.to_string()).collect();
    for e in extra {
        if variables.contains(e) {
            return Err(Error::Parse(format!("variable name '{e}' is already in use")));
        }
        variables.push(e.clone());
    }
    if variables.len() > super::poly::MAX_VARS {
        return Err(Error::TooLarge {
            n: variables.len(),
            max: super::poly::MAX_VARS,
        });
    }
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let parse_extra_only = |text: &str| -> Result<Poly> {
        let p = Poly::parse(text, &names)?;
        let uses_standard = p.terms().any(|(e, _)| e[..VARIABLES.len()].iter().any(|&x| x > 0));
        if uses_standard {
            return Err(Error::Parse(format!(
                "'{text}' may only use the algebraic variables"
            )));
        }
        Ok(p)
    };
    let polys = coords
        .iter()
        .map(|c| -> Result<[Poly; 3]> {
            Ok([parse_extra_only(&c[0])?, parse_extra_only(&c[1])?, parse_extra_only(&c[2])?])
        })
        .collect::<Result<Vec<_>>>()?;
    let equations = min_polys
        .iter()
        .map(|m| parse_extra_only(m))
        .collect::<Result<Vec<_>>>()?;
    build(&polys, variables, equations, s)
}

/// Point coordinates as polynomials: `(cos, sin, 1 + t²)` of one angle.
struct HalfAngle {
    cos: Poly,
    sin: Poly,
    den: Poly,
}

impl HalfAngle {
    fn of(nvars: usize, var: usize) -> Self {
        let t = Poly::var(nvars, var);
        let t2 = &t * &t;
        let one = Poly::constant(nvars, 1);
        Self {
            cos: &one - &t2,
            sin: t.scale(&BigInt::from(2)),
            den: &one + &t2,
        }
    }
}

fn det(a: &[Poly; 2], b: &[Poly; 2]) -> Poly {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

fn build(coords: &[[Poly; 3]], variables: Vec<String>, equations: Vec<Poly>, s: &Silhouette) -> Result<PolySystem> {
    let n = coords.len();
    if let Some(&bad) = s.indices().iter().find(|&&i| i >= n) {
        return Err(Error::DegenerateInput(format!(
            "silhouette index {} exceeds the vertex count {n}",
            bad + 1
        )));
    }
    let nv = variables.len();
    let (a, b1, b2, c1, c2) = (
        HalfAngle::of(nv, A),
        HalfAngle::of(nv, B1),
        HalfAngle::of(nv, B2),
        HalfAngle::of(nv, C1),
        HalfAngle::of(nv, C2),
    );
    // D·Q = F·Q̂ with F = da·db1·dc1 and Q̂ depending on (b2, c2) only;
    // D·P = G·P̂ with G = db2·dc2 and P̂ free of (b2, c2).
    let f = &(&a.den * &b1.den) * &c1.den;
    let g = &b2.den * &c2.den;
    // Rows of db·dc·M_{θ,φ}(v) for one (b, c) pair.
    let rows = |b: &HalfAngle, c: &HalfAngle, v: &[Poly; 3]| -> [Poly; 2] {
        let [xx, yy, zz] = v;
        let r1 = &(&b.cos * yy) - &(&b.sin * xx);
        let r2 = &(&(&c.sin * &b.den) * zz) - &(&c.cos * &(&(&b.cos * xx) + &(&b.sin * yy)));
        [&r1 * &c.den, r2]
    };
    let q_hat = |v: &[Poly; 3]| rows(&b2, &c2, v);
    let shift_x = &Poly::var(nv, X) * &f;
    let shift_y = &Poly::var(nv, Y) * &f;
    let p_hat = |v: &[Poly; 3]| -> [Poly; 2] {
        let [u1, u2] = rows(&b1, &c1, v);
        [
            &(&(&a.cos * &u1) - &(&a.sin * &u2)) + &shift_x,
            &(&(&a.sin * &u1) + &(&a.cos * &u2)) + &shift_y,
        ]
    };

    let q: Vec<[Poly; 2]> = s.indices().iter().map(|&i| q_hat(&coords[i])).collect();
    let k = q.len();
    let ff = &f * &f;
    let fg = &f * &g;
    // det(F Q_i - G P, F Q_{i+1} - G P) = F² det(Q_i, Q_{i+1}) + F G det(Q_{i+1} - Q_i, P).
    let edge_terms: Vec<(Poly, [Poly; 2])> = (0..k)
        .map(|i| {
            let (qi, qn) = (&q[i], &q[(i + 1) % k]);
            let e = [&qn[0] - &qi[0], &qn[1] - &qi[1]];
            (&ff * &det(qi, qn), e)
        })
        .collect();
    let mut inequalities = Vec::with_capacity(k * n);
    for v in coords {
        let pj = p_hat(v);
        for (const_part, e) in &edge_terms {
            inequalities.push(const_part + &(&fg * &det(e, &pj)));
        }
    }
    Ok(PolySystem {
        variables,
        silhouette: s.clone(),
        vertices: n,
        inequalities,
        equations,
    })
}

fn integer_coordinates(vertices: &[Vec3]) -> Result<Vec<[BigInt; 3]>> {
    vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let conv = |value: f64| -> Result<BigInt> {
                if value.fract() == 0.0 && value.is_finite() {
                    Ok(BigInt::from(value as i64))
                } else {
                    Err(Error::NonIntegerCoordinates { vertex: i, value })
                }
            };
            Ok([conv(v.x)?, conv(v.y)?, conv(v.z)?])
        })
        .collect()
}

/// Scales rational coordinates to integers by the least common multiple of
/// their denominators. Each coordinate must be within `1e-12` (relative) of a
/// fraction with denominator at most `max_denominator`.
pub fn integerize(vertices: &[Vec3], max_denominator: u64) -> Result<(Vec<[BigInt; 3]>, BigInt)> {
    let mut fracs: Vec<[(BigInt, BigInt); 3]> = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let mut row: [(BigInt, BigInt); 3] = Default::default();
        for (slot, value) in row.iter_mut().zip(v.to_array()) {
            *slot = rational_approx(value, max_denominator)
                .ok_or(Error::NonIntegerCoordinates { vertex: i, value })?;
        }
        fracs.push(row);
    }
    let lcm = fracs
        .iter()
        .flat_map(|r| r.iter().map(|(_, d)| d.clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let coords = fracs
        .into_iter()
        .map(|r| r.map(|(num, den)| num * (&lcm / den)))
        .collect();
    Ok((coords, lcm))
}

/// Best rational approximation by continued fractions, accepted only if it
/// matches `x` to about twelve digits.
fn rational_approx(x: f64, max_den: u64) -> Option<(BigInt, BigInt)> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-12 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            let g = BigInt::from(h1).gcd(&BigInt::from(k1));
            let (num, den) = (BigInt::from(h1) / &g, BigInt::from(k1) / &g);
            return Some(if den.is_negative() { (-num, -den) } else { (num, den) });
        }
        let frac = r - a;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// `t = tan(angle/2)`, the parameter that reproduces `(cos, sin)` of
/// `angle` under the substitution.
pub fn half_angle_parameter(angle: f64) -> f64 {
    (angle / 2.0).tan()
}

/// Evaluates `f(t) = ((1 - t²)/(1 + t²), 2t/(1 + t²))`.
pub fn circle_point(t: f64) -> (f64, f64) {
    let d = 1.0 + t * t;
    ((1.0 - t * t) / d, 2.0 * t / d)
}

/// The factor `D²` relating emitted polynomials to the raw determinants.
pub fn denominator_square(ts: [f64; 5]) -> f64 {
    let d: f64 = ts.iter().map(|t| 1.0 + t * t).product();
    d * d
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn tet() -> Vec<[BigInt; 3]> {
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
            .iter()
            .map(|r| r.map(BigInt::from))
            .collect()
    }

    #[test]
    fn substitution_sanity() {
        assert_eq!(circle_point(0.0), (1.0, 0.0));
        assert_eq!(circle_point(1.0), (0.0, 1.0));
    }

    #[test]
    fn tetrahedron_system_shape() {
        let s = Silhouette::new(vec![0, 1, 2]).unwrap();
        let sys = emit_system_integer(&tet(), &s).unwrap();
        assert_eq!(sys.inequalities.len(), 12);
        assert!(sys.max_degree() <= 22);
        let text = sys.to_polysys();
        let back = PolySystem::parse_polysys(&text).unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn rational_coordinates_are_scaled() {
        let v = [Vec3::new(0.5, -1.0 / 3.0, 2.0), Vec3::new(0.25, 1.0, -0.75)];
        let (coords, lcm) = integerize(&v, 1000).unwrap();
        assert_eq!(lcm, BigInt::from(12));
        assert_eq!(coords[0], [6, -4, 24].map(BigInt::from));
        assert_eq!(coords[1], [3, 12, -9].map(BigInt::from));
        assert!(integerize(&[Vec3::new(2f64.sqrt(), 0.0, 0.0)], 1000).is_err());
    }

    #[test]
    fn polynomials_equal_scaled_determinants() {
        use crate::geometry::{place, Projection, ProjectionAngles};
        use rand::{Rng, SeedableRng};
        let coords = tet();
        let pts: Vec<Vec3> = coords
            .iter()
            .map(|c| Vec3::new(c[0].to_f64().unwrap(), c[1].to_f64().unwrap(), c[2].to_f64().unwrap()))
            .collect();
        let s = Silhouette::new(vec![0, 2, 3]).unwrap();
        let sys = emit_system_integer(&coords, &s).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let v: [f64; 7] = std::array::from_fn(|i| if i < 2 { rng.gen_range(-1.0..1.0) } else { rng.gen_range(-3.0..3.0) });
            let [x, y, al, t1, p1, t2, p2] = v;
            let m1 = Projection::new(ProjectionAngles::new(t1, p1));
            let m2 = Projection::new(ProjectionAngles::new(t2, p2));
            let ts = [al, t1, t2, p1, p2].map(half_angle_parameter);
            let point = [x, y, ts[0], ts[1], ts[2], ts[3], ts[4]];
            let d2 = denominator_square(ts);
            for (j, pj) in pts.iter().enumerate() {
                let b = place(m1.apply(*pj), al, x, y);
                for i in 0..3 {
                    let qi = m2.apply(pts[s.indices()[i]]);
                    let qn = m2.apply(pts[s.indices()[(i + 1) % 3]]);
                    let det = (qi - b).cross(qn - b);
                    let got = sys.inequalities[3 * j + i].eval(&point) / d2;
                    assert!((got - det).abs() < 1e-9 * (1.0 + det.abs()), "{got} vs {det}");
                }
            }
        }
    }
}

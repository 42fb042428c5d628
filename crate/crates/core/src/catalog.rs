//! Built-in Platonic and Archimedean solids, and JSON polyhedron files.
//!
//! Coordinates follow the Maple `geom3d` conventions: the cube is
//! `(±1,±1,±1)`, the octahedron has unit circumradius, and so on. Catalan and
//! Johnson solids are not embedded; load them from files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::polyhedron::{centroid, Polyhedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Platonic,
    Archimedean,
    Catalan,
    Johnson,
    Custom,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub family: Family,
    /// Coordinate recipe in words.
    pub construction: &'static str,
    pub point_symmetric: bool,
    build: fn() -> Vec<Vec3>,
}

impl CatalogEntry {
    pub fn vertices(&self) -> Vec<Vec3> {
        (self.build)()
    }

    pub fn polyhedron(&self) -> Result<Polyhedron> {
        Polyhedron::new(self.name, self.vertices(), self.point_symmetric)
    }
}

/// Golden ratio.
pub fn phi() -> f64 {
    (5f64.sqrt() + 1.0) / 2.0
}

/// Real root of `t³ = t² + t + 1`.
pub fn tribonacci() -> f64 {
    let r = 33f64.sqrt();
    (1.0 + (19.0 + 3.0 * r).cbrt() + (19.0 - 3.0 * r).cbrt()) / 3.0
}

/// The `(α, β)` pair of the snub dodecahedron.
pub fn snub_dodecahedron_constants() -> (f64, f64) {
    let p = phi();
    let s = (p - 5.0 / 27.0).sqrt();
    let xi = (p / 2.0 + s / 2.0).cbrt() + (p / 2.0 - s / 2.0).cbrt();
    (xi - 1.0 / xi, xi * p + p * p + p / xi)
}

#[derive(Clone, Copy, PartialEq)]
enum Perms {
    All,
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq)]
enum Signs {
    Any,
    /// Even number of flipped coordinates.
    EvenMinus,
    OddMinus,
}

const EVEN_PERMS: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
const ODD_PERMS: [[usize; 3]; 3] = [[0, 2, 1], [2, 1, 0], [1, 0, 2]];

/// Appends every signed permutation of `base` allowed by the two filters,
/// skipping points already present.
fn expand(out: &mut Vec<Vec3>, base: [f64; 3], perms: Perms, signs: Signs) {
    let perm_list: Vec<[usize; 3]> = match perms {
        Perms::All => EVEN_PERMS.iter().chain(ODD_PERMS.iter()).copied().collect(),
        Perms::Even => EVEN_PERMS.to_vec(),
        Perms::Odd => ODD_PERMS.to_vec(),
    };
    for mask in 0..8u32 {
        let flips = mask.count_ones();
        let keep = match signs {
            Signs::Any => true,
            Signs::EvenMinus => flips % 2 == 0,
            Signs::OddMinus => flips % 2 == 1,
        };
        if !keep {
            continue;
        }
        let signed: Vec<f64> = (0..3)
            .map(|i| if mask & (1 << i) != 0 { -base[i] } else { base[i] })
            .collect();
        for p in &perm_list {
            push_unique(out, Vec3::new(signed[p[0]], signed[p[1]], signed[p[2]]));
        }
    }
}

fn push_unique(out: &mut Vec<Vec3>, v: Vec3) {
    // Fold -0.0 into 0.0 so written files look tidy.
    let v = Vec3::new(v.x + 0.0, v.y + 0.0, v.z + 0.0);
    if !out.iter().any(|&w| (w - v).norm() <= 1e-12 * (1.0 + v.norm())) {
        out.push(v);
    }
}

fn from_groups(groups: &[([f64; 3], Perms, Signs)]) -> Vec<Vec3> {
    let mut out = Vec::new();
    for &(base, perms, signs) in groups {
        expand(&mut out, base, perms, signs);
    }
    out
}

fn tetrahedron() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 1.0], Perms::Even, Signs::EvenMinus)])
}

fn cube() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 1.0], Perms::Even, Signs::Any)])
}

fn octahedron() -> Vec<Vec3> {
    from_groups(&[([0.0, 0.0, 1.0], Perms::All, Signs::Any)])
}

fn dodecahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([1.0, 1.0, 1.0], Perms::Even, Signs::Any),
        ([0.0, 1.0 / p, p], Perms::Even, Signs::Any),
    ])
}

fn icosahedron() -> Vec<Vec3> {
    from_groups(&[([0.0, phi(), 1.0], Perms::Even, Signs::Any)])
}

fn truncated_tetrahedron() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 3.0], Perms::All, Signs::EvenMinus)])
}

fn cuboctahedron() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 0.0], Perms::All, Signs::Any)])
}

fn truncated_cube() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 2f64.sqrt() - 1.0], Perms::All, Signs::Any)])
}

fn truncated_octahedron() -> Vec<Vec3> {
    from_groups(&[([0.0, 1.0, 2.0], Perms::All, Signs::Any)])
}

fn rhombicuboctahedron() -> Vec<Vec3> {
    from_groups(&[([1.0, 1.0, 1.0 + 2f64.sqrt()], Perms::All, Signs::Any)])
}

fn truncated_cuboctahedron() -> Vec<Vec3> {
    let s = 2f64.sqrt();
    from_groups(&[([1.0, 1.0 + s, 1.0 + 2.0 * s], Perms::All, Signs::Any)])
}

fn snub_cube() -> Vec<Vec3> {
    let t = tribonacci();
    let base = [1.0, 1.0 / t, t];
    // Even number of plus signs among three nonzero entries means an odd
    // number of minus signs.
    from_groups(&[
        (base, Perms::Even, Signs::OddMinus),
        (base, Perms::Odd, Signs::EvenMinus),
    ])
}

fn icosidodecahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([0.0, 0.0, p], Perms::All, Signs::Any),
        ([0.5, p / 2.0, p * p / 2.0], Perms::Even, Signs::Any),
    ])
}

fn truncated_dodecahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([0.0, 1.0 / p, 2.0 + p], Perms::Even, Signs::Any),
        ([1.0 / p, p, 2.0 * p], Perms::Even, Signs::Any),
        ([p, 2.0, p + 1.0], Perms::Even, Signs::Any),
    ])
}

fn truncated_icosahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([0.0, 1.0, 3.0 * p], Perms::Odd, Signs::Any),
        ([1.0, 2.0 + p, 2.0 * p], Perms::Odd, Signs::Any),
        ([p, 2.0, 2.0 * p + 1.0], Perms::Odd, Signs::Any),
    ])
}

fn rhombicosidodecahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([1.0, 1.0, p * p * p], Perms::Even, Signs::Any),
        ([p * p, p, 2.0 * p], Perms::Even, Signs::Any),
        ([2.0 + p, 0.0, p * p], Perms::Even, Signs::Any),
    ])
}

fn truncated_icosidodecahedron() -> Vec<Vec3> {
    let p = phi();
    from_groups(&[
        ([1.0 / p, 1.0 / p, 3.0 + p], Perms::Even, Signs::Any),
        ([2.0 / p, p, 1.0 + 2.0 * p], Perms::Even, Signs::Any),
        ([1.0 / p, p * p, -1.0 + 3.0 * p], Perms::Even, Signs::Any),
        ([2.0 * p - 1.0, 2.0, 2.0 + p], Perms::Even, Signs::Any),
        ([p, 3.0, 2.0 * p], Perms::Even, Signs::Any),
    ])
}

fn snub_dodecahedron() -> Vec<Vec3> {
    let p = phi();
    let (a, b) = snub_dodecahedron_constants();
    let bases = [
        [2.0 * a, 2.0, 2.0 * b],
        [a + b / p + p, -a * p + b + 1.0 / p, a / p + b * p - 1.0],
        [a + b / p - p, a * p - b + 1.0 / p, a / p + b * p + 1.0],
        [-a / p + b * p + 1.0, -a + b / p - p, a * p + b - 1.0 / p],
        [-a / p + b * p - 1.0, a - b / p - p, a * p + b + 1.0 / p],
    ];
    let groups: Vec<_> = bases.iter().map(|&v| (v, Perms::Even, Signs::OddMinus)).collect();
    from_groups(&groups)
}

macro_rules! entry {
    ($name:expr, $family:ident, $sym:expr, $build:ident, $recipe:expr) => {
        CatalogEntry {
            name: $name,
            family: Family::$family,
            construction: $recipe,
            point_symmetric: $sym,
            build: $build,
        }
    };
}

/// Table order: the five Platonic solids, then the thirteen Archimedean.
pub const CATALOG: [CatalogEntry; 18] = [
    entry!("tetrahedron", Platonic, false, tetrahedron,
        "(±1,±1,±1) with an even number of minus signs"),
    entry!("cube", Platonic, true, cube, "(±1,±1,±1)"),
    entry!("octahedron", Platonic, true, octahedron, "all permutations of (0,0,±1)"),
    entry!("dodecahedron", Platonic, true, dodecahedron,
        "(±1,±1,±1) and even permutations of (0,±1/Φ,±Φ)"),
    entry!("icosahedron", Platonic, true, icosahedron, "even permutations of (0,±Φ,±1)"),
    entry!("truncated tetrahedron", Archimedean, false, truncated_tetrahedron,
        "all permutations of (±1,±1,±3) with an even number of minus signs"),
    entry!("cuboctahedron", Archimedean, true, cuboctahedron, "all permutations of (±1,±1,0)"),
    entry!("truncated cube", Archimedean, true, truncated_cube,
        "all permutations of (±1,±1,±(√2-1))"),
    entry!("truncated octahedron", Archimedean, true, truncated_octahedron,
        "all permutations of (0,±1,±2)"),
    entry!("rhombicuboctahedron", Archimedean, true, rhombicuboctahedron,
        "all permutations of (±1,±1,±(1+√2))"),
    entry!("truncated cuboctahedron", Archimedean, true, truncated_cuboctahedron,
        "all permutations of (±1,±(1+√2),±(1+2√2))"),
    entry!("snub cube", Archimedean, false, snub_cube,
        "even permutations of (±1,±1/t,±t) with an even number of plus signs, \
         odd permutations with an odd number; t the tribonacci constant"),
    entry!("icosidodecahedron", Archimedean, true, icosidodecahedron,
        "all permutations of (0,0,±Φ), even permutations of (±1/2,±Φ/2,±Φ²/2)"),
    entry!("truncated dodecahedron", Archimedean, true, truncated_dodecahedron,
        "even permutations of (0,±1/Φ,±(2+Φ)), (±1/Φ,±Φ,±2Φ), (±Φ,±2,±(Φ+1))"),
    entry!("truncated icosahedron", Archimedean, true, truncated_icosahedron,
        "odd permutations of (0,±1,±3Φ), (±1,±(2+Φ),±2Φ), (±Φ,±2,±(2Φ+1))"),
    entry!("rhombicosidodecahedron", Archimedean, true, rhombicosidodecahedron,
        "even permutations of (±1,±1,±Φ³), (±Φ²,±Φ,±2Φ), (±(2+Φ),0,±Φ²)"),
    entry!("truncated icosidodecahedron", Archimedean, true, truncated_icosidodecahedron,
        "even permutations of (±1/Φ,±1/Φ,±(3+Φ)), (±2/Φ,±Φ,±(1+2Φ)), \
         (±1/Φ,±Φ²,±(3Φ-1)), (±(2Φ-1),±2,±(2+Φ)), (±Φ,±3,±2Φ)"),
    entry!("snub dodecahedron", Archimedean, false, snub_dodecahedron,
        "even permutations of five (α,β)-dependent triples with an odd number of sign changes"),
];

/// `"Truncated_Cube"`, `"truncated-cube"` and `"truncated cube"` all match.
pub fn normalize_name(name: &str) -> String {
    name.trim()
        .to_lowercase()
        .split(|c: char| c == '_' || c == '-' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let key = normalize_name(name);
    CATALOG
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownSolid(name.to_string()))
}

pub fn get(name: &str) -> Result<Polyhedron> {
    entry(name)?.polyhedron()
}

pub fn list() -> &'static [CatalogEntry] {
    &CATALOG
}

/// On-disk form of a polyhedron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronFile {
    pub name: String,
    pub vertices: Vec<[f64; 3]>,
    #[serde(default)]
    pub point_symmetric: bool,
}

impl PolyhedronFile {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        Self {
            name: p.name().to_string(),
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            point_symmetric: p.is_point_symmetric(),
        }
    }

    /// Validates the contents, optionally shifting the centroid to the
    /// origin first.
    pub fn into_polyhedron(self, recenter: bool) -> Result<Polyhedron> {
        let mut vertices: Vec<Vec3> = self.vertices.iter().map(|&[x, y, z]| Vec3::new(x, y, z)).collect();
        if recenter && !vertices.is_empty() {
            let c = centroid(&vertices);
            for v in &mut vertices {
                *v = *v - c;
            }
        }
        Polyhedron::new(self.name, vertices, self.point_symmetric)
    }
}

pub fn parse(json: &str, recenter: bool) -> Result<Polyhedron> {
    let file: PolyhedronFile = serde_json::from_str(json)?;
    file.into_polyhedron(recenter)
}

pub fn load(path: impl AsRef<Path>, recenter: bool) -> Result<Polyhedron> {
    parse(&fs::read_to_string(path)?, recenter)
}

pub fn to_json(p: &Polyhedron) -> String {
    serde_json::to_string_pretty(&PolyhedronFile::from_polyhedron(p)).expect("plain data serializes")
}

pub fn save(p: &Polyhedron, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(p) + "\n")?;
    Ok(())
}

/// A catalog name, or failing that a path to a polyhedron file.
pub fn resolve(name_or_path: &str, recenter: bool) -> Result<Polyhedron> {
    match entry(name_or_path) {
        Ok(e) => e.polyhedron(),
        Err(unknown) => {
            let path = Path::new(name_or_path);
            if path.is_file() {
                load(path, recenter)
            } else {
                Err(unknown)
            }
        }
    }
}

//! Rupert's problem for convex polyhedra: randomized search for passages,
//! Nieuwland numbers of solutions, Monte-Carlo Rupertness estimates and
//! polynomial systems that certify a fixed silhouette pair.

pub mod catalog;
pub mod containment;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod lp;
pub mod nieuwland;
pub mod polyhedron;
pub mod precise;
pub mod record;
pub mod render;
pub mod rng;
pub mod rupertness;
pub mod semialgebraic;
pub mod solver;
pub mod stats;

pub use catalog::{CatalogEntry, Family};
pub use containment::{fit_rotation, fit_rotation_translation, fit_translation, FitResult};
pub use error::{Error, Result};
pub use geometry::{project, projection_matrix, ProjectionAngles, Vec2, Vec3};
pub use hull::{convex_hull, ConvexPolygon};
pub use nieuwland::{improve, mu_of, ImproveConfig, NieuwlandResult};
pub use polyhedron::Polyhedron;
pub use record::SolutionRecord;
pub use render::{render_solution, RenderSpec};
pub use rupertness::{estimate_rupertness, RupertnessEstimate};
pub use solver::{solve, solve_naive, verify, SearchConfig, SolutionSeptuple};
pub use stats::clopper_pearson;

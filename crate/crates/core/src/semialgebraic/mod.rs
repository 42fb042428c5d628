//! Silhouettes and the polynomial inequality systems they induce.

pub mod emit;
pub mod poly;
pub mod silhouette;

pub use emit::{emit_system, emit_system_algebraic, emit_system_integer, integerize, PolySystem, VARIABLES};
pub use poly::Poly;
pub use silhouette::{
    count_cycles, discover_silhouettes, enumerate_cycles, silhouette_of, silhouette_of_strict, Silhouette,
};

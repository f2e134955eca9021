//! Exact computations for conic-quartic configurations: Mordell-Weil lattices
//! of rational elliptic surfaces, dihedral cover existence, Alexander
//! polynomials, and a distinguisher for Zariski N-plets.

pub mod alexander;
pub mod algebra;
pub mod config;
pub mod cover;
pub mod geometry;
pub mod elliptic;
pub mod data;

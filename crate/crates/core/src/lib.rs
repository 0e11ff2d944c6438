//! Combinatorial mirror symmetry for smooth projective toric varieties.

pub mod cech;
pub mod chains;
pub mod hms;
pub mod lattice;
pub mod linalg;
pub mod polyhedron;
pub mod simp;
pub mod trees;
pub mod tropical;

//! The 24-cell, the complement complexes `K₀` and `K`, vertex links and the
//! CAT(1) link condition.

pub mod complex;
pub mod graph;
pub mod lens;
pub mod polytope;
pub mod window;

pub use complex::{CellComplex2, Link};
pub use graph::{cat1_check, hypercube, isomorphic, isomorphism, mobius_kantor, Cat1, MetricGraph};
pub use polytope::{build_24cell, k0_link, k0_triangles, zeta_arrow, Octahedron, Polytope24};
pub use window::{build_k, build_window, WindowComplexes};
pub use lens::{lens_assignment, lens_svg, LensEntry, LensRole};

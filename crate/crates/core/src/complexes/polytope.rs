//! The 24-cell (Voronoi cell of `Λ_D4`) and the complex `K₀` of its faces
//! that avoid the fixed hyperplanes through its centre.

use serde::Serialize;

use super::complex::{CellComplex2, Link};
use crate::hquat::{int, rat, Quat, Rational};
use crate::lattices::{phi_decompose, RootSystem};

/// Squared distance from a facet centre to each vertex of its octahedron.
pub fn octahedron_radius_sq() -> Rational {
    rat(1, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Octahedron {
    pub center: Quat,
    /// Indices into the polytope's vertex list, increasing.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polytope24 {
    pub center: Quat,
    /// `center + u` for `u ∈ Φ`, in the canonical order of `Φ`.
    pub vertices: Vec<Quat>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub octahedra: Vec<Octahedron>,
}

/// The facet centres `(i−j)/2 · Φ` of the 24-cell at the origin.
pub fn facet_directions() -> Vec<Quat> {
    let half = (&Quat::i() - &Quat::j()).scale(&rat(1, 2));
    RootSystem::standard().elements().iter().map(|u| &half * u).collect()
}

pub fn build_24cell(center: &Quat) -> Polytope24 {
    let vertices: Vec<Quat> = RootSystem::standard().elements().iter().map(|u| center + u).collect();
    let n = vertices.len();
    let adjacent = |a: usize, b: usize| (&vertices[a] - &vertices[b]).norm() == int(1);
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !adjacent(a, b) {
                continue;
            }
            edges.push([a, b]);
            for c in b + 1..n {
                if adjacent(a, c) && adjacent(b, c) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    let octahedra = facet_directions()
        .into_iter()
        .map(|d| {
            let fc = center + &d;
            let members = (0..n).filter(|&v| (&vertices[v] - &fc).norm() == octahedron_radius_sq()).collect();
            Octahedron { center: fc, vertices: members }
        })
        .collect();
    Polytope24 { center: center.clone(), vertices, edges, triangles, octahedra }
}

impl Polytope24 {
    pub fn f_vector(&self) -> (usize, usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.triangles.len(), self.octahedra.len())
    }

    pub fn triangle_points(&self, t: &[usize; 3]) -> [&Quat; 3] {
        t.map(|v| &self.vertices[v])
    }

    /// The full 2-skeleton.
    pub fn skeleton(&self) -> CellComplex2 {
        CellComplex2::from_simplices(
            self.edges.iter().map(|e| e.map(|v| &self.vertices[v])),
            self.triangles.iter().map(|t| self.triangle_points(t)),
        )
    }

    /// The 1-skeleton together with the triangles kept in `K₀`.
    pub fn k0_complex(&self) -> CellComplex2 {
        CellComplex2::from_simplices(
            self.edges.iter().map(|e| e.map(|v| &self.vertices[v])),
            k0_triangles(self).iter().map(|t| self.triangle_points(t)),
        )
    }
}

/// A triangle of the 24-cell at `center` is dropped from `K₀` exactly when
/// its three vertices lie on three different complex lines through the
/// centre.
pub fn k0_keeps(center: &Quat, triangle: [&Quat; 3]) -> bool {
    let lines: Vec<_> = triangle
        .iter()
        .map(|x| phi_decompose(&(*x - center)).expect("vertex of this cell").0)
        .collect();
    lines[0] == lines[1] || lines[0] == lines[2] || lines[1] == lines[2]
}

pub fn k0_triangles(p: &Polytope24) -> Vec<[usize; 3]> {
    p.triangles
        .iter()
        .copied()
        .filter(|t| k0_keeps(&p.center, p.triangle_points(t)))
        .collect()
}

pub fn k0_link(p: &Polytope24, vertex: usize) -> Link {
    p.k0_complex().link_at(&p.vertices[vertex]).expect("vertex of the cell")
}

/// `Some(true)` when `b − c = (a − c)·ζ` (an arrow `a → b` of right
/// multiplication by ζ about the centre `c`), `Some(false)` for the
/// reverse arrow, `None` otherwise.
pub fn zeta_arrow(center: &Quat, a: &Quat, b: &Quat) -> Option<bool> {
    let (a, b) = (a - center, b - center);
    if &a * &Quat::zeta() == b {
        Some(true)
    } else if &b * &Quat::zeta() == a {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::graph::{cat1_check, isomorphic, theta_graph, Cat1};
    use crate::groups::{generate_g4, stabilizer};
    use crate::lattices::LineLabel;
    use std::collections::BTreeSet;

    #[test]
    fn f_vector_and_incidences() {
        let p = build_24cell(&Quat::zero());
        assert_eq!(p.f_vector(), (24, 96, 96, 24));
        for o in &p.octahedra {
            assert_eq!(o.vertices.len(), 6);
        }
        for v in 0..24 {
            assert_eq!(p.octahedra.iter().filter(|o| o.vertices.contains(&v)).count(), 6);
        }
        for e in &p.edges {
            let count = p.triangles.iter().filter(|t| t.contains(&e[0]) && t.contains(&e[1])).count();
            assert_eq!(count, 3);
        }
    }

    #[test]
    fn octahedron_constant_is_the_nearest_vertex_distance() {
        // brute force over the central cell: the six closest vertices to
        // each facet centre form its octahedron
        for d in facet_directions() {
            let mut dists: Vec<Rational> = RootSystem::standard().elements().iter().map(|u| (u - &d).norm()).collect();
            dists.sort();
            assert_eq!(dists[0], octahedron_radius_sq());
            assert_eq!(dists[5], octahedron_radius_sq());
            assert!(dists[6] > octahedron_radius_sq());
            assert_eq!(d.norm(), rat(1, 2));
        }
    }

    #[test]
    fn k0_counts() {
        let p = build_24cell(&Quat::zero());
        assert_eq!(k0_triangles(&p).len(), 72);
        let k0 = p.k0_complex();
        assert_eq!(k0.f_vector(), (24, 96, 72));
        assert!(k0.invariant_violations().is_empty());
        let theta = theta_graph(&[3, 3, 3]);
        for v in 0..24 {
            let link = k0_link(&p, v);
            assert_eq!((link.graph.node_count, link.graph.edge_count()), (8, 9));
            assert!(link.graph.is_biconnected());
            assert_eq!(link.graph.degrees().iter().filter(|&&d| d == 3).count(), 2);
            assert!(isomorphic(&link.graph, &theta));
            assert_eq!(cat1_check(&link.graph), Cat1::Pass { min_cycle: Some(6) });
        }
    }

    #[test]
    fn k0_rule_examples() {
        let (one, zeta, i) = (Quat::one(), Quat::zeta(), Quat::i());
        assert!(k0_keeps(&Quat::zero(), [&one, &zeta, &i]));
        assert_eq!(zeta_arrow(&Quat::zero(), &one, &zeta), Some(true));
        assert_eq!(zeta_arrow(&Quat::zero(), &zeta, &one), Some(false));
        assert_eq!(zeta_arrow(&Quat::zero(), &one, &i), None);
        // triangles with vertices on the lines 1, i, j
        let p = build_24cell(&Quat::zero());
        let line = |x: &Quat| phi_decompose(x).unwrap().0;
        let mut seen = 0;
        for t in &p.triangles {
            let pts = p.triangle_points(t);
            let lines: BTreeSet<LineLabel> = pts.iter().map(|x| line(x)).collect();
            if lines == BTreeSet::from([LineLabel::One, LineLabel::I, LineLabel::J]) {
                seen += 1;
                assert!(!k0_keeps(&Quat::zero(), pts));
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn k0_is_invariant_under_the_centre_stabilizer() {
        let center = Quat::from_ints(1, 1, 0, 0);
        let p = build_24cell(&center);
        let kept: BTreeSet<Vec<Quat>> = k0_triangles(&p)
            .iter()
            .map(|t| {
                let mut v: Vec<Quat> = p.triangle_points(t).iter().map(|q| (*q).clone()).collect();
                v.sort();
                v
            })
            .collect();
        let stab = stabilizer(&center);
        assert_eq!(stab.len(), generate_g4().len());
        for g in &stab {
            for t in &kept {
                let mut image: Vec<Quat> = t.iter().map(|x| g.apply(x)).collect();
                image.sort();
                assert!(kept.contains(&image));
            }
        }
    }

    #[test]
    fn translated_cell_is_a_translate() {
        let c = Quat::from_ints(0, 1, -1, 0);
        let moved = build_24cell(&c);
        let origin = build_24cell(&Quat::zero());
        for (a, b) in moved.vertices.iter().zip(&origin.vertices) {
            assert_eq!(a, &(b + &c));
        }
        assert_eq!(k0_triangles(&moved), k0_triangles(&origin));
    }
}

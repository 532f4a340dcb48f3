//! The Voronoi tiling by 24-cells centred on `Λ_D4` and the complement
//! complex `K`, restricted to a window of cell centres.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::complex::{CellComplex2, Link};
use super::polytope::{build_24cell, k0_keeps};
use crate::arrangement::{hull_meets, hyperplanes_near, hyperplanes_through, Hyperplane, Window};
use crate::error::{Error, Result};
use crate::hquat::{rat, Quat};
use crate::lattices::{d4_points_in_ball, in_lattice, LatticeTag, RootSystem};

/// Both complexes over the same cells: `K` (edges plus kept triangles) and
/// the full Voronoi 2-skeleton.
#[derive(Clone, Debug)]
pub struct WindowComplexes {
    pub window: Window,
    /// Cell centres, sorted.
    pub centers: Vec<Quat>,
    pub k: CellComplex2,
    pub voronoi: CellComplex2,
    /// Triangles on which the cells containing them disagree.
    pub inconsistent: Vec<[Quat; 3]>,
}

/// The centres of the 8 cells around a vertex `x ∈ Λ \ Λ_D4`.
pub fn incident_centers(x: &Quat) -> Vec<Quat> {
    let mut out: Vec<Quat> = RootSystem::standard()
        .elements()
        .iter()
        .map(|u| x - u)
        .filter(|c| in_lattice(c, LatticeTag::LambdaD4))
        .collect();
    out.sort();
    out
}

fn sorted3(t: [&Quat; 3]) -> [Quat; 3] {
    let mut v = t.map(Quat::clone);
    v.sort();
    v
}

pub fn build_window(window: &Window) -> WindowComplexes {
    let centers = d4_points_in_ball(&window.radius_sq);
    let origin = build_24cell(&Quat::zero());
    // the rule only depends on positions relative to the centre
    let keeps: Vec<bool> = origin.triangles.iter().map(|t| k0_keeps(&origin.center, origin.triangle_points(t))).collect();
    let mut edges: BTreeSet<[Quat; 2]> = BTreeSet::new();
    // triangle → verdict of each cell containing it
    let mut verdicts: BTreeMap<[Quat; 3], Vec<bool>> = BTreeMap::new();
    for c in &centers {
        let vertices: Vec<Quat> = origin.vertices.iter().map(|v| v + c).collect();
        for e in &origin.edges {
            let mut pair = e.map(|v| vertices[v].clone());
            pair.sort();
            edges.insert(pair);
        }
        for (t, &keep) in origin.triangles.iter().zip(&keeps) {
            let pts = t.map(|v| &vertices[v]);
            verdicts.entry(sorted3(pts)).or_default().push(keep);
        }
    }
    let inconsistent = verdicts
        .iter()
        .filter(|(_, v)| v.iter().any(|&b| b != v[0]))
        .map(|(t, _)| t.clone())
        .collect();
    let edge_refs = || edges.iter().map(|[a, b]| [a, b]);
    let triangle_refs = |keep_all: bool| {
        verdicts
            .iter()
            .filter(move |(_, v)| keep_all || v.iter().all(|&b| b))
            .map(|([a, b, c], _)| [a, b, c])
    };
    let k = CellComplex2::from_simplices(edge_refs(), triangle_refs(false));
    let voronoi = CellComplex2::from_simplices(edge_refs(), triangle_refs(true));
    WindowComplexes { window: window.clone(), centers, k, voronoi, inconsistent }
}

pub fn build_k(window: &Window) -> CellComplex2 {
    build_window(window).k
}

impl WindowComplexes {
    /// All 8 cells around `x` are in the window.
    pub fn is_interior(&self, x: &Quat) -> bool {
        let around = incident_centers(x);
        around.len() == 8 && around.iter().all(|c| self.centers.binary_search(c).is_ok())
    }

    pub fn interior_vertices(&self) -> Vec<Quat> {
        self.k.vertices().iter().filter(|x| self.is_interior(x)).cloned().collect()
    }

    fn interior_link(&self, complex: &CellComplex2, x: &Quat) -> Result<Link> {
        complex.vertex_index(x).ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
        if !self.is_interior(x) {
            return Err(Error::BoundaryVertex(x.to_string()));
        }
        complex.link_at(x)
    }

    pub fn link_in_k(&self, x: &Quat) -> Result<Link> {
        self.interior_link(&self.k, x)
    }

    pub fn full_voronoi_link(&self, x: &Quat) -> Result<Link> {
        self.interior_link(&self.voronoi, x)
    }

    /// Voronoi triangles at `x` that `K` leaves out.
    pub fn removed_triangles_at(&self, x: &Quat) -> Vec<[Quat; 3]> {
        let Some(v) = self.voronoi.vertex_index(x) else {
            return Vec::new();
        };
        self.voronoi
            .triangles_at(v)
            .iter()
            .map(|&t| self.voronoi.triangle_points(&self.voronoi.triangles()[t]))
            .filter(|pts| !self.k.contains_triangle(*pts))
            .map(sorted3)
            .collect()
    }
}

pub fn centroid(t: [&Quat; 3]) -> Quat {
    (&(t[0] + t[1]) + t[2]).scale(&rat(1, 3))
}

/// Hyperplanes through the centroid of the triangle.
pub fn planes_through_centroid(t: [&Quat; 3]) -> Vec<Hyperplane> {
    hyperplanes_through(&centroid(t))
}

/// Every (simplex, hyperplane) pair where a closed edge or triangle of the
/// complex meets a hyperplane. Empty for a complement complex.
pub fn hyperplane_hits(complex: &CellComplex2) -> Vec<(Vec<Quat>, Hyperplane)> {
    let mut hits = Vec::new();
    // circumradius² of a unit triangle is 1/3, of a unit segment 1/4
    for t in complex.triangles() {
        let pts = complex.triangle_points(t);
        for h in hyperplanes_near(&centroid(pts), &rat(1, 3)) {
            let owned: Vec<Quat> = pts.iter().map(|q| (*q).clone()).collect();
            if hull_meets(&h, &owned) {
                hits.push((owned, h));
            }
        }
    }
    for e in complex.edges() {
        let [a, b] = complex.edge_points(e);
        let mid = (a + b).scale(&rat(1, 2));
        for h in hyperplanes_near(&mid, &rat(1, 4)) {
            let owned = vec![a.clone(), b.clone()];
            if hull_meets(&h, &owned) {
                hits.push((owned, h));
            }
        }
    }
    hits
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson<'a> {
    #[serde(serialize_with = "crate::hquat::serialize_rational")]
    pub radius_sq: &'a crate::hquat::Rational,
    pub centers: usize,
    pub complex: &'a CellComplex2,
}

impl WindowComplexes {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            radius_sq: &self.window.radius_sq,
            centers: self.centers.len(),
            complex: &self.k,
        })
        .expect("serialisable")
    }
}

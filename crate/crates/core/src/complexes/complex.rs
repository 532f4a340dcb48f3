//! Explicit 2-complexes with exact vertex coordinates, and vertex links.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::graph::MetricGraph;
use crate::error::{Error, Result};
use crate::hquat::{int, Quat};

/// Vertices are sorted; edges and triangles are sorted index tuples with
/// increasing entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex2 {
    vertices: Vec<Quat>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    #[serde(skip)]
    vertex_edges: Vec<Vec<usize>>,
    #[serde(skip)]
    vertex_triangles: Vec<Vec<usize>>,
}

impl CellComplex2 {
    /// Builds the complex spanned by the given simplices. Vertices are
    /// collected from both lists and glued by exact coordinates.
    pub fn from_simplices<'a>(
        edges: impl IntoIterator<Item = [&'a Quat; 2]>,
        triangles: impl IntoIterator<Item = [&'a Quat; 3]>,
    ) -> CellComplex2 {
        let edges: Vec<[&Quat; 2]> = edges.into_iter().collect();
        let triangles: Vec<[&Quat; 3]> = triangles.into_iter().collect();
        let mut index: BTreeMap<&Quat, usize> = BTreeMap::new();
        for q in edges.iter().flatten().chain(triangles.iter().flatten()) {
            index.insert(q, 0);
        }
        for (n, slot) in index.values_mut().enumerate() {
            *slot = n;
        }
        let vertices: Vec<Quat> = index.keys().map(|q| (*q).clone()).collect();
        let edge_set: BTreeSet<[usize; 2]> = edges
            .iter()
            .map(|e| {
                let mut s = e.map(|q| index[q]);
                s.sort();
                s
            })
            .collect();
        let triangle_set: BTreeSet<[usize; 3]> = triangles
            .iter()
            .map(|t| {
                let mut s = t.map(|q| index[q]);
                s.sort();
                s
            })
            .collect();
        let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
        let triangles: Vec<[usize; 3]> = triangle_set.into_iter().collect();
        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (n, e) in edges.iter().enumerate() {
            for &v in e {
                vertex_edges[v].push(n);
            }
        }
        let mut vertex_triangles = vec![Vec::new(); vertices.len()];
        for (n, t) in triangles.iter().enumerate() {
            for &v in t {
                vertex_triangles[v].push(n);
            }
        }
        CellComplex2 { vertices, edges, triangles, vertex_edges, vertex_triangles }
    }

    pub fn vertices(&self) -> &[Quat] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.triangles.len())
    }

    pub fn vertex_index(&self, x: &Quat) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn edge_points(&self, e: &[usize; 2]) -> [&Quat; 2] {
        e.map(|v| &self.vertices[v])
    }

    pub fn triangle_points(&self, t: &[usize; 3]) -> [&Quat; 3] {
        t.map(|v| &self.vertices[v])
    }

    pub fn contains_triangle(&self, t: [&Quat; 3]) -> bool {
        let Some(mut idx) = t.iter().map(|q| self.vertex_index(q)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        idx.sort();
        self.triangles.binary_search(&[idx[0], idx[1], idx[2]]).is_ok()
    }

    pub fn triangles_at(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    /// Descriptions of every broken invariant: unit edge lengths, triangle
    /// edges present, equilateral triangles.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let unit = |a: &Quat, b: &Quat| (a - b).norm() == int(1);
        for e in &self.edges {
            let [a, b] = self.edge_points(e);
            if !unit(a, b) {
                problems.push(format!("edge {a} {b} does not have length 1"));
            }
        }
        for t in &self.triangles {
            let [a, b, c] = self.triangle_points(t);
            for (x, y, i, j) in [(a, b, t[0], t[1]), (a, c, t[0], t[2]), (b, c, t[1], t[2])] {
                if !unit(x, y) {
                    problems.push(format!("triangle side {x} {y} does not have length 1"));
                }
                if self.edges.binary_search(&[i, j]).is_err() {
                    problems.push(format!("triangle side {x} {y} is not an edge"));
                }
            }
        }
        problems
    }

    /// The link of vertex `v`: one node per incident edge, one unit edge
    /// (angle π/3) per incident triangle.
    pub fn link(&self, v: usize) -> Link {
        let vertex = self.vertices[v].clone();
        let mut neighbors: Vec<usize> = self.vertex_edges[v]
            .iter()
            .map(|&e| {
                let [a, b] = self.edges[e];
                if a == v { b } else { a }
            })
            .collect();
        neighbors.sort();
        let node = |w: usize| neighbors.binary_search(&w).expect("triangle side is an edge");
        let graph = MetricGraph::unit(
            neighbors.len(),
            self.vertex_triangles[v].iter().map(|&t| {
                let others: Vec<usize> = self.triangles[t].iter().copied().filter(|&w| w != v).collect();
                (node(others[0]), node(others[1]))
            }),
        );
        Link {
            vertex,
            neighbors: neighbors.iter().map(|&w| self.vertices[w].clone()).collect(),
            graph,
        }
    }

    pub fn link_at(&self, x: &Quat) -> Result<Link> {
        let v = self.vertex_index(x).ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
        Ok(self.link(v))
    }
}

/// A vertex link, with its nodes identified by the neighbouring vertices
/// (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Link {
    pub vertex: Quat,
    pub neighbors: Vec<Quat>,
    pub graph: MetricGraph,
}

impl Link {
    /// The pair of neighbours joined by each link edge.
    pub fn edge_endpoints(&self) -> Vec<[&Quat; 2]> {
        self.graph
            .edges
            .iter()
            .map(|e| [&self.neighbors[e.a], &self.neighbors[e.b]])
            .collect()
    }
}

//! Orbits of simplices of `K₀` under `G4` and of `K` under `G̃4`, and the
//! one-vertex presentation read off the quotient.
//!
//! Points are handled in doubled integer coordinates: every vertex lies
//! in Λ, so `2x` is an integer vector and every group element acts by an
//! integer matrix divided by two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::words::{Presentation, Word};
use crate::arrangement::Window;
use crate::complexes::{build_24cell, build_window, zeta_arrow, CellComplex2};
use crate::complexes::window::incident_centers;
use crate::error::{Error, Result};
use crate::groups::generate_g4;
use crate::hquat::{int, Quat, Rational};
use crate::lattices::doubled_integers;

type Point = [i64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientSpace {
    /// `K₀` modulo the spherical group `G4`.
    K0,
    /// `K` modulo the euclidean group `G̃4`.
    K,
}

impl FromStr for QuotientSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuotientSpace> {
        match s {
            "K0" | "k0" => Ok(QuotientSpace::K0),
            "K" | "k" => Ok(QuotientSpace::K),
            _ => Err(Error::Parse { what: "space", input: s.to_string(), reason: "expected K or K0".into() }),
        }
    }
}

impl fmt::Display for QuotientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientSpace::K0 => "K0",
            QuotientSpace::K => "K",
        })
    }
}

/// An oriented edge orbit with its representative `tail → head`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    pub name: String,
    pub tail: String,
    pub head: String,
    /// Whether the orientation comes from a ζ-arrow (otherwise lexicographic).
    pub zeta_oriented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleOrbit {
    pub vertices: [String; 3],
    /// Signed edge-orbit indices (1-based) along `v0 → v1 → v2 → v0`.
    pub word: Word,
    pub word_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub space: QuotientSpace,
    /// Window radius² used for `K`; `None` for `K₀`.
    pub radius_sq: Option<String>,
    /// Orbit counts (vertices, edges, triangles).
    pub counts: (usize, usize, usize),
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeOrbit>,
    pub triangles: Vec<TriangleOrbit>,
}

const GENERATOR_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn generator_name(n: usize) -> String {
    GENERATOR_NAMES.get(n).map_or_else(|| format!("x{n}"), |s| s.to_string())
}

/// `2·M` for the linear part of every element of `G4`.
fn doubled_matrices() -> &'static Vec<[[i64; 4]; 4]> {
    static M: std::sync::OnceLock<Vec<[[i64; 4]; 4]>> = std::sync::OnceLock::new();
    M.get_or_init(|| {
        generate_g4()
            .elements()
            .iter()
            .map(|g| {
                let m = g.real_matrix();
                std::array::from_fn(|r| {
                    std::array::from_fn(|c| {
                        let e: Rational = &m[r][c] * int(2);
                        assert!(e.is_integer(), "G4 matrices have half-integer entries");
                        e.to_integer().to_i64().expect("small entry")
                    })
                })
            })
            .collect()
    })
}

fn to_point(x: &Quat) -> Point {
    let d = doubled_integers(x).expect("vertex in Λ");
    d.map(|v| v.to_i64().expect("coordinates fit in i64"))
}

fn to_quat(p: &Point) -> Quat {
    Quat::halves(p[0], p[1], p[2], p[3])
}

fn apply(m: &[[i64; 4]; 4], x: &Point) -> Point {
    std::array::from_fn(|r| {
        let s: i64 = (0..4).map(|c| m[r][c] * x[c]).sum();
        debug_assert!(s % 2 == 0);
        s / 2
    })
}

/// Representative of `x + 2Λ` with coordinates 0 or 1 in the basis
/// `(ζ, i, j, k)`, in doubled coordinates.
fn reduce(x: &Point) -> Point {
    let n0 = x[0].rem_euclid(2);
    let n = |v: i64| ((v - x[0]) / 2).rem_euclid(2);
    [n0, n0 + 2 * n(x[1]), n0 + 2 * n(x[2]), n0 + 2 * n(x[3])]
}

fn sub(a: &Point, b: &Point) -> Point {
    std::array::from_fn(|n| a[n] - b[n])
}

fn add(a: &Point, b: &Point) -> Point {
    std::array::from_fn(|n| a[n] + b[n])
}

/// Canonical form of a tuple of points under the group; unordered tuples
/// are sorted first. For `G̃4` every point in turn is moved to its
/// representative mod 2Λ.
fn canonical(space: QuotientSpace, pts: &[Point], unordered: bool) -> Vec<Point> {
    let mut best: Option<Vec<Point>> = None;
    let mut offer = |mut cand: Vec<Point>| {
        if unordered {
            cand.sort();
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for m in doubled_matrices() {
        let image: Vec<Point> = pts.iter().map(|p| apply(m, p)).collect();
        match space {
            QuotientSpace::K0 => offer(image),
            QuotientSpace::K => {
                for anchor in &image {
                    let shift = sub(&reduce(anchor), anchor);
                    offer(image.iter().map(|p| add(p, &shift)).collect());
                }
            }
        }
    }
    best.expect("the group is nonempty")
}

/// The complex whose simplices are taken up to the group.
fn source_complex(space: QuotientSpace, radius_sq: &Rational) -> Result<CellComplex2> {
    match space {
        QuotientSpace::K0 => Ok(build_24cell(&Quat::zero()).k0_complex()),
        QuotientSpace::K => Ok(build_window(&Window::new(radius_sq.clone())?).k),
    }
}

/// Cell centres shared by both endpoints of an edge.
fn common_centers(space: QuotientSpace, a: &Quat, b: &Quat) -> Vec<Quat> {
    match space {
        QuotientSpace::K0 => vec![Quat::zero()],
        QuotientSpace::K => {
            let around_b = incident_centers(b);
            incident_centers(a).into_iter().filter(|c| around_b.contains(c)).collect()
        }
    }
}

fn orbit_counts(space: QuotientSpace, c: &CellComplex2) -> (usize, usize, usize) {
    let canon = |pts: Vec<&Quat>| {
        let p: Vec<Point> = pts.into_iter().map(to_point).collect();
        canonical(space, &p, true)
    };
    let v: BTreeSet<_> = c.vertices().iter().map(|x| canon(vec![x])).collect();
    let e: BTreeSet<_> = c.edges().iter().map(|e| canon(c.edge_points(e).to_vec())).collect();
    let t: BTreeSet<_> = c.triangles().iter().map(|t| canon(c.triangle_points(t).to_vec())).collect();
    (v.len(), e.len(), t.len())
}

/// Smallest window radius² at which `K` shows every orbit. Squared norms
/// in `Λ_D4` are even, so the next larger window is at radius² + 2.
pub fn stability_radius_sq() -> Rational {
    int(2)
}

/// Orbit counts and labelled boundary words of `K₀/G4` or `K/G̃4`.
///
/// For `K` the window of radius² `radius_sq` is compared against radius²
/// `radius_sq + 2`, the next shell of cell centres; differing counts mean
/// the window is too small.
pub fn quotient(space: QuotientSpace, radius_sq: &Rational) -> Result<QuotientComplex> {
    let complex = source_complex(space, radius_sq)?;
    let counts = orbit_counts(space, &complex);
    if space == QuotientSpace::K {
        let larger = orbit_counts(space, &source_complex(space, &(radius_sq + int(2)))?);
        if larger != counts {
            return Err(Error::WindowTooSmall { radius_sq: radius_sq.to_string(), small: counts, large: larger });
        }
    }

    let vertices: BTreeSet<Vec<Point>> =
        complex.vertices().iter().map(|x| canonical(space, &[to_point(x)], true)).collect();

    // edge orbits in canonical order, each with an orientation
    let mut edge_reps: BTreeMap<Vec<Point>, ()> = BTreeMap::new();
    for e in complex.edges() {
        let p: Vec<Point> = complex.edge_points(e).iter().map(|x| to_point(x)).collect();
        edge_reps.insert(canonical(space, &p, true), ());
    }
    let mut edges = Vec::new();
    // ordered canonical form → signed generator
    let mut letters: BTreeMap<Vec<Point>, i32> = BTreeMap::new();
    for (n, rep) in edge_reps.keys().enumerate() {
        let (a, b) = (to_quat(&rep[0]), to_quat(&rep[1]));
        let arrow = common_centers(space, &a, &b).iter().find_map(|c| zeta_arrow(c, &a, &b));
        let (tail, head) = match arrow {
            Some(false) => (b, a),
            _ => (a, b),
        };
        let forward = canonical(space, &[to_point(&tail), to_point(&head)], false);
        let backward = canonical(space, &[to_point(&head), to_point(&tail)], false);
        if forward == backward {
            return Err(Error::EdgeInversion(format!("{} -> {}", tail.label(), head.label())));
        }
        let g = n as i32 + 1;
        letters.insert(forward, g);
        letters.insert(backward, -g);
        edges.push(EdgeOrbit {
            name: generator_name(n),
            tail: tail.label(),
            head: head.label(),
            zeta_oriented: arrow.is_some(),
        });
    }

    let mut triangle_reps: BTreeSet<Vec<Point>> = BTreeSet::new();
    for t in complex.triangles() {
        let p: Vec<Point> = complex.triangle_points(t).iter().map(|x| to_point(x)).collect();
        triangle_reps.insert(canonical(space, &p, true));
    }
    let mut triangles = Vec::new();
    for rep in &triangle_reps {
        let word: Word = (0..3)
            .map(|n| {
                let step = canonical(space, &[rep[n], rep[(n + 1) % 3]], false);
                letters[&step]
            })
            .collect();
        let word_text = word
            .iter()
            .map(|&x| {
                let name = generator_name(x.unsigned_abs() as usize - 1);
                if x > 0 { name } else { name.to_uppercase() }
            })
            .collect();
        triangles.push(TriangleOrbit { vertices: [0, 1, 2].map(|n| to_quat(&rep[n]).label()), word, word_text });
    }

    Ok(QuotientComplex {
        space,
        radius_sq: (space == QuotientSpace::K).then(|| radius_sq.to_string()),
        counts,
        vertices: vertices.iter().map(|v| to_quat(&v[0]).label()).collect(),
        edges,
        triangles,
    })
}

/// One generator per edge orbit and one relator per triangle orbit.
pub fn extract_presentation(qc: &QuotientComplex) -> Result<Presentation> {
    if qc.counts.0 != 1 {
        return Err(Error::MultipleVertexOrbits(qc.counts.0));
    }
    Presentation::new(
        qc.edges.iter().map(|e| e.name.clone()).collect(),
        qc.triangles.iter().map(|t| t.word.clone()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hquat::Quat;
    use crate::lattices::reduce_mod_two_lambda;
    use crate::presentations::words::equivalent_up_to_symmetry;
    use proptest::prelude::*;

    #[test]
    fn integer_action_matches_the_exact_maps() {
        let x = Quat::halves(1, -3, 5, 7);
        for (g, m) in generate_g4().elements().iter().zip(doubled_matrices()) {
            assert_eq!(to_quat(&apply(m, &to_point(&x))), g.apply(&x));
        }
    }

    proptest! {
        #[test]
        fn integer_reduction_matches_the_lattice_module(
            a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, half in any::<bool>()
        ) {
            let x = if half {
                Quat::halves(2 * a + 1, 2 * b + 1, 2 * c + 1, 2 * d + 1)
            } else {
                Quat::from_ints(a, b, c, d)
            };
            prop_assert_eq!(to_quat(&reduce(&to_point(&x))), reduce_mod_two_lambda(&x));
        }

        #[test]
        fn canonical_form_is_constant_on_orbits(
            g in 0usize..24, t in prop::array::uniform4(-3i64..3), u in prop::array::uniform4(-3i64..3)
        ) {
            // a unit triangle of K₀ moved by an element of G̃4
            let tri = [Quat::one(), Quat::zeta(), Quat::i()].map(|q| to_point(&q));
            let m = &doubled_matrices()[g];
            let shift: Point = to_point(&(Quat::from_ints(t[0], t[1], t[2], t[3]).scale(&int(2))));
            let moved: Vec<Point> = tri.iter().map(|p| add(&apply(m, p), &shift)).collect();
            prop_assert_eq!(canonical(QuotientSpace::K, &moved, true), canonical(QuotientSpace::K, &tri, true));
            // an odd translation is not in the group
            let odd = to_point(&Quat::from_ints(u[0], u[1], u[2], u[3]));
            let is_even = reduce(&odd) == [0; 4];
            let slid: Vec<Point> = tri.iter().map(|p| add(p, &odd)).collect();
            if is_even {
                prop_assert_eq!(canonical(QuotientSpace::K, &slid, true), canonical(QuotientSpace::K, &tri, true));
            }
        }
    }

    #[test]
    fn k0_modulo_g4() {
        let qc = quotient(QuotientSpace::K0, &int(0)).unwrap();
        assert_eq!(qc.counts, (1, 4, 3));
        let p = extract_presentation(&qc).unwrap();
        assert!(p.relators.iter().all(|r| r.len() == 3));
        let braid = Presentation::parse_with_generators(&["a", "b", "c", "d"], "abd,bcd,cad").unwrap();
        assert!(equivalent_up_to_symmetry(&p, &braid), "{p}");
    }

    #[test]
    fn k_modulo_the_affine_group() {
        let qc = quotient(QuotientSpace::K, &stability_radius_sq()).unwrap();
        assert_eq!(qc.counts, (1, 4, 4));
        let p = extract_presentation(&qc).unwrap();
        assert!(p.relators.iter().all(|r| r.len() == 3));
        let bt = Presentation::parse_with_generators(&["a", "b", "c", "d"], "abd,bcd,cad,cba").unwrap();
        assert!(equivalent_up_to_symmetry(&p, &bt), "{p}");
    }

    #[test]
    fn tiny_windows_are_rejected() {
        for r in [0, 1] {
            assert!(matches!(quotient(QuotientSpace::K, &int(r)), Err(Error::WindowTooSmall { .. })));
        }
    }

    #[test]
    fn counts_are_stable_beyond_the_stability_radius() {
        for r in 2..=5 {
            let c = source_complex(QuotientSpace::K, &int(r)).unwrap();
            assert_eq!(orbit_counts(QuotientSpace::K, &c), (1, 4, 4), "radius² {r}");
        }
    }

    #[test]
    fn space_parsing() {
        assert_eq!("K0".parse::<QuotientSpace>().unwrap(), QuotientSpace::K0);
        assert_eq!("K".parse::<QuotientSpace>().unwrap(), QuotientSpace::K);
        assert!("L".parse::<QuotientSpace>().is_err());
    }
}

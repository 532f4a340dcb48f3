//! Six lenses that together show the 24-cell.
//!
//! Write `x = x₁ + x₂` with `x₁ ∈ ℂ` and `x₂ ∈ ℂ^⊥`. The great circle
//! `ℂ ∩ S³` is the common rim of all six lenses, and lens `n` collects the
//! points whose `x₂` lies within π/6 of the ray through `c₀·ζⁿ`, where
//! `c₀ = (i−k)/2`. Points on the rays at angle ±π/6 lie on a hemisphere
//! shared by two neighbouring lenses.

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::polytope::build_24cell;
use crate::hquat::{int, proj_c, ComplexScalar, Quat, ZetaPower};

pub const LENS_COUNT: u8 = 6;

/// The octahedron centre at the middle of lens 0.
pub fn lens_axis() -> Quat {
    Quat::halves(0, 1, 0, -1)
}

/// `c₀·ζⁿ`, the centre direction of lens `n`.
pub fn lens_center(n: u8) -> Quat {
    &lens_axis() * ZetaPower::new(n as i64).to_quat()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointKind {
    Vertex,
    Octahedron,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LensRole {
    /// On the common rim `ℂ`; belongs to every lens.
    BoundaryCircle,
    /// On the hemisphere between two neighbouring lenses: at angle +π/6
    /// from the centre ray of `front_of` and −π/6 from that of `back_of`.
    Hemisphere { front_of: u8, back_of: u8 },
    /// Strictly inside one lens but off its centre ray.
    Interior,
    /// The octahedron whose centre is the centre of the lens.
    LensCenter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensEntry {
    pub point: Quat,
    pub label: String,
    pub kind: PointKind,
    pub role: LensRole,
    /// Every lens whose closure contains the point, increasing.
    pub lenses: Vec<u8>,
    /// For octahedra: the six vertices of the facet.
    pub octahedron_vertices: Vec<String>,
    /// `x₁` as `(s, t)` for `s + tω`.
    #[serde(skip)]
    pub rim_coordinate: ComplexScalar,
}

/// `(x₁, x₂)` with `x₁ = proj_ℂ(x)` and `x₂ = x − x₁`.
pub fn lens_split(x: &Quat) -> (ComplexScalar, Quat) {
    let x1 = proj_c(x);
    let x2 = x - &x1.to_quat();
    (x1, x2)
}

/// `z ∈ ℂ` with `x₂ = c₀·z`.
fn along_axis(x2: &Quat) -> ComplexScalar {
    let c0 = lens_axis();
    let z = &c0.inverse().expect("nonzero axis") * x2;
    let as_complex = proj_c(&z);
    debug_assert_eq!(as_complex.to_quat(), z, "ℂ^⊥ is the right ℂ-line through c₀");
    as_complex
}

/// Position of `s + tω` relative to the sector `|arg| ≤ π/6`: with
/// `s + tω = (s − t/2) + i·t√3/2` the condition reads `3|t| ≤ 2s − t`.
fn sector_position(z: &ComplexScalar) -> std::cmp::Ordering {
    let lhs = z.t.abs() * int(3);
    let rhs = &z.s * int(2) - &z.t;
    lhs.cmp(&rhs)
}

/// Lenses whose closure contains a direction `x₂ ≠ 0`, with the position
/// against the sector bound and the rotated coordinate.
fn sectors(x2: &Quat) -> Vec<(u8, std::cmp::Ordering, ComplexScalar)> {
    let z = along_axis(x2);
    (0..LENS_COUNT)
        .filter_map(|n| {
            let rotated = &z * &ZetaPower::new(-(n as i64)).to_complex();
            let pos = sector_position(&rotated);
            (pos != std::cmp::Ordering::Greater).then_some((n, pos, rotated))
        })
        .collect()
}

fn classify(x: &Quat, kind: PointKind) -> (LensRole, Vec<u8>) {
    let (_, x2) = lens_split(x);
    if x2.is_zero() {
        return (LensRole::BoundaryCircle, (0..LENS_COUNT).collect());
    }
    let found = sectors(&x2);
    let lenses: Vec<u8> = found.iter().map(|(n, _, _)| *n).collect();
    let role = match found.as_slice() {
        [(_, _, rotated)] if rotated.t.is_zero() && kind == PointKind::Octahedron => LensRole::LensCenter,
        [_] => LensRole::Interior,
        [(a, _, za), (b, _, _)] => {
            // the point is at angle +π/6 from lens a's centre iff t > 0 there
            if za.t.is_positive() {
                LensRole::Hemisphere { front_of: *a, back_of: *b }
            } else {
                LensRole::Hemisphere { front_of: *b, back_of: *a }
            }
        }
        _ => unreachable!("a direction lies in at most two closed sectors"),
    };
    (role, lenses)
}

/// Every vertex and octahedron centre of the 24-cell at the origin.
pub fn lens_assignment() -> Vec<LensEntry> {
    let cell = build_24cell(&Quat::zero());
    let mut out = Vec::with_capacity(48);
    for v in &cell.vertices {
        let (role, lenses) = classify(v, PointKind::Vertex);
        out.push(LensEntry {
            point: v.clone(),
            label: v.label(),
            kind: PointKind::Vertex,
            role,
            lenses,
            octahedron_vertices: Vec::new(),
            rim_coordinate: proj_c(v),
        });
    }
    for o in &cell.octahedra {
        let (role, lenses) = classify(&o.center, PointKind::Octahedron);
        out.push(LensEntry {
            point: o.center.clone(),
            label: o.center.label(),
            kind: PointKind::Octahedron,
            role,
            lenses,
            octahedron_vertices: o.vertices.iter().map(|&v| cell.vertices[v].label()).collect(),
            rim_coordinate: proj_c(&o.center),
        });
    }
    out
}

/// Plane position of `s + tω` in units of the rim radius.
fn plane_point(z: &ComplexScalar) -> (f64, f64) {
    let s = z.s.to_f64().unwrap_or(0.0);
    let t = z.t.to_f64().unwrap_or(0.0);
    (s - t / 2.0, t * 3f64.sqrt() / 2.0)
}

/// A schematic SVG: one disc per lens, the rim drawn as a circle, each point
/// placed at its `x₁` coordinate. Front hemisphere vertices are filled,
/// back ones hollow, and lens centres are squares.
pub fn lens_svg(entries: &[LensEntry]) -> String {
    const PANEL: f64 = 260.0;
    const RADIUS: f64 = 100.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="10">"#,
        PANEL * 3.0,
        PANEL * 2.0
    );
    let cell = build_24cell(&Quat::zero());
    for lens in 0..LENS_COUNT {
        let ox = PANEL * (lens % 3) as f64 + PANEL / 2.0;
        let oy = PANEL * (lens / 3) as f64 + PANEL / 2.0;
        let at = |z: &ComplexScalar| {
            let (x, y) = plane_point(z);
            (ox + RADIUS * x, oy - RADIUS * y)
        };
        let _ = writeln!(svg, r#"<g id="lens-{lens}">"#);
        let _ = writeln!(
            svg,
            r#"<circle cx="{ox:.1}" cy="{oy:.1}" r="{RADIUS}" fill="none" stroke="gray"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">lens {lens}: {}</text>"#,
            ox,
            oy - RADIUS - 14.0,
            lens_center(lens).label()
        );
        let in_lens = |q: &Quat| {
            entries
                .iter()
                .find(|e| e.kind == PointKind::Vertex && &e.point == q)
                .is_some_and(|e| e.lenses.contains(&lens))
        };
        for [a, b] in &cell.edges {
            let (pa, pb) = (&cell.vertices[*a], &cell.vertices[*b]);
            if in_lens(pa) && in_lens(pb) {
                let (x1, y1) = at(&proj_c(pa));
                let (x2, y2) = at(&proj_c(pb));
                let _ = writeln!(
                    svg,
                    r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="lightgray"/>"#
                );
            }
        }
        for e in entries.iter().filter(|e| e.lenses.contains(&lens)) {
            let (x, y) = at(&e.rim_coordinate);
            let shape = match (e.kind, e.role) {
                (PointKind::Octahedron, LensRole::LensCenter) => {
                    format!(r#"<rect x="{:.1}" y="{:.1}" width="8" height="8" fill="black"/>"#, x - 4.0, y - 4.0)
                }
                (PointKind::Octahedron, _) => continue,
                (_, LensRole::Hemisphere { back_of, .. }) if back_of == lens => {
                    format!(r#"<circle cx="{x:.1}" cy="{y:.1}" r="3.5" fill="white" stroke="black"/>"#)
                }
                _ => format!(r#"<circle cx="{x:.1}" cy="{y:.1}" r="3.5" fill="black"/>"#),
            };
            let _ = writeln!(svg, "{shape}");
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
                x + 5.0,
                y - 5.0,
                e.label
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn count(entries: &[LensEntry], kind: PointKind, pred: impl Fn(&LensRole) -> bool) -> usize {
        entries.iter().filter(|e| e.kind == kind && pred(&e.role)).count()
    }

    #[test]
    fn lens_centres_are_octahedron_centres() {
        let labels: BTreeSet<String> = (0..LENS_COUNT).map(|n| lens_center(n).label()).collect();
        for l in ["(i-k)/2", "(-i+j)/2", "(-j+k)/2"] {
            assert!(labels.contains(l), "{labels:?}");
        }
        let entries = lens_assignment();
        for n in 0..LENS_COUNT {
            let centre = entries
                .iter()
                .find(|e| e.point == lens_center(n))
                .expect("lens centre is an octahedron centre");
            assert_eq!(centre.role, LensRole::LensCenter);
            assert_eq!(centre.lenses, vec![n]);
            assert_eq!(centre.octahedron_vertices.len(), 6);
        }
    }

    #[test]
    fn roles_and_counts() {
        let entries = lens_assignment();
        assert_eq!(entries.len(), 48);
        assert_eq!(count(&entries, PointKind::Vertex, |r| *r == LensRole::BoundaryCircle), 6);
        assert_eq!(count(&entries, PointKind::Vertex, |r| matches!(r, LensRole::Hemisphere { .. })), 18);
        assert_eq!(count(&entries, PointKind::Octahedron, |r| *r == LensRole::LensCenter), 6);
        assert_eq!(count(&entries, PointKind::Octahedron, |r| matches!(r, LensRole::Hemisphere { .. })), 18);
        for kind in [PointKind::Vertex, PointKind::Octahedron] {
            let per_lens: Vec<usize> = (0..LENS_COUNT)
                .map(|n| entries.iter().filter(|e| e.kind == kind && e.lenses.contains(&n)).count())
                .collect();
            assert!(per_lens.iter().all(|&c| c == per_lens[0]), "{per_lens:?}");
        }
        // each lens has three front and three back hemisphere vertices
        for n in 0..LENS_COUNT {
            let front = count(&entries, PointKind::Vertex, |r| matches!(r, LensRole::Hemisphere { front_of, .. } if *front_of == n));
            let back = count(&entries, PointKind::Vertex, |r| matches!(r, LensRole::Hemisphere { back_of, .. } if *back_of == n));
            assert_eq!((front, back), (3, 3));
        }
    }

    #[test]
    fn split_is_orthogonal() {
        for e in lens_assignment() {
            let (x1, x2) = lens_split(&e.point);
            assert_eq!(x1.to_quat().dot(&x2), int(0));
            assert!(proj_c(&x2).is_zero());
        }
    }

    #[test]
    fn svg_mentions_every_lens() {
        let svg = lens_svg(&lens_assignment());
        assert!(svg.starts_with("<svg"));
        for n in 0..LENS_COUNT {
            assert!(svg.contains(&format!("id=\"lens-{n}\"")));
        }
        assert!(svg.contains("(i-k)/2"));
    }
}

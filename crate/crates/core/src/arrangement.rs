//! The arrangement of reflection hyperplanes (fixed complex lines) of `G̃4`.
//!
//! Each hyperplane belongs to one of four parallel families, labelled by
//! the root line whose reflection fixes it, and is cut out by two integer
//! linear forms: `L₁·x = ℓ`, `L₂·x = m` with `ℓ + m` even.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::membership;
use crate::hquat::{int, rat, Quat, Rational};
use crate::isometry::{EuclideanMap, FixedSet, IsometryClass};
use crate::lattices::{d4_points_in_ball, in_lattice, isqrt_floor, LatticeTag, LineLabel, RootSystem};
use crate::linalg::{feasible, solve, Constraint};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Hyperplane {
    pub family: LineLabel,
    pub l: i64,
    pub m: i64,
}

/// The two linear forms of a family. Their normals are orthogonal with
/// squared lengths 1 and 3.
pub fn family_forms(family: LineLabel) -> [[i64; 4]; 2] {
    match family {
        LineLabel::One => [[1, 0, 0, 0], [0, 1, 1, 1]],
        LineLabel::I => [[0, 1, 0, 0], [1, 0, 1, -1]],
        LineLabel::J => [[0, 0, 1, 0], [1, -1, 0, 1]],
        LineLabel::K => [[0, 0, 0, 1], [1, 1, -1, 0]],
    }
}

fn apply_form(form: &[i64; 4], x: &Quat) -> Rational {
    form.iter().zip(x.coords()).map(|(&f, c)| c * int(f)).sum()
}

fn form_row(form: &[i64; 4]) -> Vec<Rational> {
    form.iter().map(|&f| int(f)).collect()
}

fn as_i64(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

impl Hyperplane {
    /// `None` unless `ℓ + m` is even.
    pub fn new(family: LineLabel, l: i64, m: i64) -> Option<Hyperplane> {
        ((l + m) % 2 == 0).then_some(Hyperplane { family, l, m })
    }

    pub fn equations(&self) -> [Constraint; 2] {
        let [f1, f2] = family_forms(self.family);
        [Constraint::new(form_row(&f1), int(self.l)), Constraint::new(form_row(&f2), int(self.m))]
    }

    pub fn contains(&self, x: &Quat) -> bool {
        let [f1, f2] = family_forms(self.family);
        apply_form(&f1, x) == int(self.l) && apply_form(&f2, x) == int(self.m)
    }

    /// The point of the plane closest to the origin.
    pub fn basepoint(&self) -> Quat {
        let [f1, f2] = family_forms(self.family);
        let n1 = Quat::from_ints(f1[0], f1[1], f1[2], f1[3]);
        let n2 = Quat::from_ints(f2[0], f2[1], f2[2], f2[3]);
        &n1.scale(&int(self.l)) + &n2.scale(&rat(self.m, 3))
    }

    /// A nonzero vector spanning the plane's direction over ℂ.
    pub fn direction(family: LineLabel) -> Quat {
        let [f1, f2] = family_forms(family);
        let sol = solve(&[form_row(&f1), form_row(&f2)], &[int(0), int(0)], 4).expect("homogeneous");
        Quat::from_coords(sol.kernel[0].clone().try_into().unwrap())
    }

    /// `ℓ² + m²/3`.
    pub fn distance_sq_from_origin(&self) -> Rational {
        int(self.l * self.l) + rat(self.m * self.m, 3)
    }

    pub fn distance_sq_to(&self, p: &Quat) -> Rational {
        let [f1, f2] = family_forms(self.family);
        let e1 = apply_form(&f1, p) - int(self.l);
        let e2 = apply_form(&f2, p) - int(self.m);
        &e1 * &e1 + &e2 * &e2 / int(3)
    }

    /// Does `fix` describe exactly this plane?
    pub fn fixed_set_matches(&self, fix: &FixedSet) -> bool {
        fix.is_line(&self.basepoint(), &Hyperplane::direction(self.family))
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}({}, {})", self.family.name(), self.l, self.m)
    }
}

/// The family whose planes are parallel to the complex line `dℂ`.
pub fn family_of_direction(d: &Quat) -> Option<LineLabel> {
    let dw = d * &Quat::omega();
    LineLabel::ALL.into_iter().find(|&fam| {
        family_forms(fam)
            .iter()
            .all(|f| apply_form(f, d).is_zero() && apply_form(f, &dw).is_zero())
    })
}

/// The hyperplane fixed by a reflection of `G̃4`.
pub fn hyperplane_of(r: &EuclideanMap) -> Result<Hyperplane> {
    let reject = || Error::NotGroupReflection(r.to_string());
    if r.classify() != IsometryClass::Reflection || !membership(r) {
        return Err(reject());
    }
    let FixedSet::ComplexLine { basepoint, direction } = r.fixed_set() else {
        return Err(reject());
    };
    let family = family_of_direction(&direction).ok_or_else(reject)?;
    let [f1, f2] = family_forms(family);
    let l = as_i64(&apply_form(&f1, &basepoint)).ok_or_else(reject)?;
    let m = as_i64(&apply_form(&f2, &basepoint)).ok_or_else(reject)?;
    Hyperplane::new(family, l, m).ok_or_else(reject)
}

/// The closed ball `norm(x) ≤ radius_sq` about the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    #[serde(serialize_with = "crate::hquat::serialize_rational")]
    pub radius_sq: Rational,
}

impl Window {
    pub fn new(radius_sq: Rational) -> Result<Window> {
        if radius_sq < Rational::zero() {
            return Err(Error::Config(format!("negative radius_sq {radius_sq}")));
        }
        Ok(Window { radius_sq })
    }

    pub fn contains(&self, x: &Quat) -> bool {
        x.norm() <= self.radius_sq
    }
}

/// Every hyperplane meeting the window, sorted.
pub fn enumerate_hyperplanes(window: &Window) -> Vec<Hyperplane> {
    let l_max = isqrt_floor(&window.radius_sq);
    let m_max = isqrt_floor(&(&window.radius_sq * int(3)));
    let mut out = Vec::new();
    for family in LineLabel::ALL {
        for l in -l_max..=l_max {
            for m in -m_max..=m_max {
                if let Some(h) = Hyperplane::new(family, l, m) {
                    if h.distance_sq_from_origin() <= window.radius_sq {
                        out.push(h);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Intersection {
    Point(Quat),
    SamePlane,
    Disjoint,
}

pub fn intersect(h1: &Hyperplane, h2: &Hyperplane) -> Intersection {
    if h1.family == h2.family {
        return if h1 == h2 { Intersection::SamePlane } else { Intersection::Disjoint };
    }
    let eqs: Vec<Constraint> = h1.equations().into_iter().chain(h2.equations()).collect();
    let rows: Vec<Vec<Rational>> = eqs.iter().map(|c| c.coeffs.clone()).collect();
    let rhs: Vec<Rational> = eqs.iter().map(|c| c.rhs.clone()).collect();
    match solve(&rows, &rhs, 4) {
        Some(sol) if sol.dimension() == 0 => {
            Intersection::Point(Quat::from_coords(sol.particular.try_into().unwrap()))
        }
        // planes of different families are transverse, so this never happens
        Some(_) => Intersection::SamePlane,
        None => Intersection::Disjoint,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub hyperplanes: usize,
    pub pairs: usize,
    /// Distinct pairwise intersection points inside the window, sorted.
    pub points: Vec<Quat>,
    pub outside_d4: Vec<Quat>,
    /// Points of `Λ_D4` in the window that no pair produced.
    pub missing_d4: Vec<Quat>,
    pub planes_through_origin: usize,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.outside_d4.is_empty() && self.missing_d4.is_empty()
    }
}

pub fn verify_intersection_points(window: &Window) -> IntersectionReport {
    let planes = enumerate_hyperplanes(window);
    let mut points = BTreeSet::new();
    let mut pairs = 0;
    for (n, h1) in planes.iter().enumerate() {
        for h2 in &planes[n + 1..] {
            if let Intersection::Point(p) = intersect(h1, h2) {
                pairs += 1;
                if window.contains(&p) {
                    points.insert(p);
                }
            }
        }
    }
    let outside_d4 = points.iter().filter(|p| !in_lattice(p, LatticeTag::LambdaD4)).cloned().collect();
    let missing_d4 = d4_points_in_ball(&window.radius_sq)
        .into_iter()
        .filter(|p| !points.contains(p))
        .collect();
    IntersectionReport {
        hyperplanes: planes.len(),
        pairs,
        points: points.into_iter().collect(),
        outside_d4,
        missing_d4,
        planes_through_origin: planes.iter().filter(|h| h.contains(&Quat::zero())).count(),
    }
}

/// The 24 facet inequalities `⟨x − c, n⟩ ≤ ½` of the 24-cell centred at `c`,
/// with `n` running over the facet centres `(i−j)/2 · Φ`.
pub fn cell_inequalities(center: &Quat) -> Vec<Constraint> {
    let half = &(&Quat::i() - &Quat::j()).scale(&rat(1, 2));
    RootSystem::standard()
        .elements()
        .iter()
        .map(|u| {
            let n = half * u;
            let rhs = rat(1, 2) + n.dot(center);
            Constraint::new(n.into_coords().to_vec(), rhs)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Incidence {
    Misses,
    ThroughCenter,
    /// Meets the cell without passing through its centre.
    Violation,
}

/// How a hyperplane meets the closed 24-cell centred at `center`.
pub fn cell_incidence(h: &Hyperplane, center: &Quat) -> Incidence {
    if h.contains(center) {
        return Incidence::ThroughCenter;
    }
    // circumradius 1
    if h.distance_sq_to(center) > int(1) {
        return Incidence::Misses;
    }
    if feasible(&h.equations(), &cell_inequalities(center), 4) {
        Incidence::Violation
    } else {
        Incidence::Misses
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    pub centers: usize,
    pub pairs_checked: usize,
    pub through_center: usize,
    pub violations: Vec<(Hyperplane, Quat)>,
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every hyperplane meeting a 24-cell of the window passes
/// through its centre.
pub fn cell_incidence_check(window: &Window) -> IncidenceReport {
    let centers = d4_points_in_ball(&window.radius_sq);
    let mut report = IncidenceReport {
        centers: centers.len(),
        pairs_checked: 0,
        through_center: 0,
        violations: Vec::new(),
    };
    for c in &centers {
        for family in LineLabel::ALL {
            let [f1, f2] = family_forms(family);
            // |L₁| = 1 and |L₂| = √3 < 2, so nearby planes have these ranges
            let l0 = as_i64(&apply_form(&f1, c)).expect("integral centre");
            let m0 = as_i64(&apply_form(&f2, c)).expect("integral centre");
            for l in l0 - 1..=l0 + 1 {
                for m in m0 - 2..=m0 + 2 {
                    let Some(h) = Hyperplane::new(family, l, m) else { continue };
                    report.pairs_checked += 1;
                    match cell_incidence(&h, c) {
                        Incidence::Misses => {}
                        Incidence::ThroughCenter => report.through_center += 1,
                        Incidence::Violation => report.violations.push((h, c.clone())),
                    }
                }
            }
        }
    }
    report
}

/// Hyperplanes at squared distance at most `radius_sq` from `p`, sorted.
pub fn hyperplanes_near(p: &Quat, radius_sq: &Rational) -> Vec<Hyperplane> {
    let floor = |r: Rational| r.floor().to_integer().to_i64().expect("small coordinate");
    let ceil = |r: Rational| r.ceil().to_integer().to_i64().expect("small coordinate");
    let reach_l = int(isqrt_floor(radius_sq) + 1);
    let reach_m = int(isqrt_floor(&(radius_sq * int(3))) + 1);
    let mut out = Vec::new();
    for family in LineLabel::ALL {
        let [f1, f2] = family_forms(family);
        let (l0, m0) = (apply_form(&f1, p), apply_form(&f2, p));
        for l in ceil(&l0 - &reach_l)..=floor(&l0 + &reach_l) {
            for m in ceil(&m0 - &reach_m)..=floor(&m0 + &reach_m) {
                if let Some(h) = Hyperplane::new(family, l, m) {
                    if &h.distance_sq_to(p) <= radius_sq {
                        out.push(h);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Hyperplanes containing `p`; at most one per family.
pub fn hyperplanes_through(p: &Quat) -> Vec<Hyperplane> {
    LineLabel::ALL
        .into_iter()
        .filter_map(|family| {
            let [f1, f2] = family_forms(family);
            let l = as_i64(&apply_form(&f1, p))?;
            let m = as_i64(&apply_form(&f2, p))?;
            Hyperplane::new(family, l, m)
        })
        .collect()
}

/// Does the convex hull of `points` meet the plane?
pub fn hull_meets(h: &Hyperplane, points: &[Quat]) -> bool {
    // each defining form must take its value somewhere between the points
    let brackets = h.equations().iter().all(|eq| {
        let values: Vec<Rational> = points
            .iter()
            .map(|p| eq.coeffs.iter().zip(p.coords()).map(|(a, x)| a * x).sum())
            .collect();
        values.iter().any(|v| v <= &eq.rhs) && values.iter().any(|v| v >= &eq.rhs)
    });
    if !brackets {
        return false;
    }
    let n = points.len();
    let mut eqs = vec![Constraint::new(vec![int(1); n], int(1))];
    for eq in h.equations() {
        let coeffs = points
            .iter()
            .map(|p| eq.coeffs.iter().zip(p.coords()).map(|(a, x)| a * x).sum())
            .collect();
        eqs.push(Constraint::new(coeffs, eq.rhs.clone()));
    }
    let nonneg: Vec<Constraint> = (0..n)
        .map(|i| {
            let mut c = vec![int(0); n];
            c[i] = int(-1);
            Constraint::new(c, int(0))
        })
        .collect();
    feasible(&eqs, &nonneg, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{r1, r1_prime, r_i, r_q};
    use proptest::prelude::*;

    #[test]
    fn generators_fix_the_expected_planes() {
        assert_eq!(hyperplane_of(&r1_prime()).unwrap(), Hyperplane { family: LineLabel::One, l: 1, m: 1 });
        assert_eq!(hyperplane_of(&r_i()).unwrap(), Hyperplane { family: LineLabel::I, l: 0, m: 0 });
        for q in LineLabel::ALL {
            let h = hyperplane_of(&r_q(q)).unwrap();
            assert_eq!((h.family, h.l, h.m), (q, 0, 0));
            assert!(h.fixed_set_matches(&r_q(q).fixed_set()));
        }
        assert!(hyperplane_of(&EuclideanMap::left(Quat::i()).unwrap()).is_err());
        let off_lattice = EuclideanMap::translation(Quat::one()).compose(&r1());
        assert!(hyperplane_of(&off_lattice).is_err());
    }

    #[test]
    fn distance_formula_matches_the_basepoint() {
        for h in enumerate_hyperplanes(&Window::new(int(5)).unwrap()) {
            assert!(h.contains(&h.basepoint()));
            assert_eq!(h.basepoint().norm(), h.distance_sq_from_origin());
            assert_eq!(h.distance_sq_to(&Quat::zero()), h.distance_sq_from_origin());
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for r in [0i64, 1, 2, 4, 7] {
            let window = Window::new(int(r)).unwrap();
            let planes = enumerate_hyperplanes(&window);
            let mut count = 0;
            for _ in LineLabel::ALL {
                for l in -10i64..=10 {
                    for m in -10i64..=10 {
                        if (l + m) % 2 == 0 && 3 * l * l + m * m <= 3 * r {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(planes.len(), count, "radius_sq {r}");
        }
        assert_eq!(enumerate_hyperplanes(&Window::new(int(0)).unwrap()).len(), 4);
    }

    #[test]
    fn two_generator_planes_meet_at_one_plus_k() {
        let a = hyperplane_of(&r1_prime()).unwrap();
        let b = hyperplane_of(&r_i()).unwrap();
        assert_eq!(intersect(&a, &b), Intersection::Point(Quat::from_ints(1, 0, 0, 1)));
        assert_eq!(intersect(&a, &a), Intersection::SamePlane);
        let c = Hyperplane::new(LineLabel::One, 0, 0).unwrap();
        assert_eq!(intersect(&a, &c), Intersection::Disjoint);
    }

    #[test]
    fn intersections_are_d4_points() {
        let report = verify_intersection_points(&Window::new(int(4)).unwrap());
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.planes_through_origin, 4);
    }

    #[test]
    fn planes_through_a_cell_pass_through_its_center() {
        let report = cell_incidence_check(&Window::new(int(2)).unwrap());
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.through_center > 0);
        let h = Hyperplane::new(LineLabel::One, 0, 0).unwrap();
        assert_eq!(cell_incidence(&h, &Quat::from_ints(2, 0, 0, 0)), Incidence::Misses);
        assert_eq!(cell_incidence(&h, &Quat::zero()), Incidence::ThroughCenter);
    }

    #[test]
    fn cell_inequalities_hold_on_vertices_tightly() {
        let c = Quat::from_ints(1, 1, 0, 0);
        let ineqs = cell_inequalities(&c);
        for u in RootSystem::standard().elements() {
            let x = &c + u;
            let tight = ineqs
                .iter()
                .filter(|k| {
                    let lhs: Rational = k.coeffs.iter().zip(x.coords()).map(|(a, b)| a * b).sum();
                    assert!(lhs <= k.rhs);
                    lhs == k.rhs
                })
                .count();
            // a vertex of the 24-cell lies on 6 octahedral facets
            assert_eq!(tight, 6);
        }
    }

    #[test]
    fn hull_meets_examples() {
        let h = Hyperplane::new(LineLabel::I, 0, 0).unwrap();
        let zero = Quat::zero();
        assert!(hull_meets(&h, std::slice::from_ref(&zero)));
        assert!(!hull_meets(&h, &[Quat::i()]));
        let a = Quat::from_ints(0, 1, 0, 0);
        let b = Quat::from_ints(0, -1, 0, 0);
        // the segment crosses the plane b = 0 at the origin, which lies on H_i(0,0)
        assert!(hull_meets(&h, &[a, b]));
    }

    #[test]
    fn nearby_planes_match_brute_force() {
        let p = Quat::new(rat(1, 3), rat(-1, 2), rat(2, 3), int(1));
        for r in [int(0), rat(1, 3), int(1), int(3)] {
            let fast = hyperplanes_near(&p, &r);
            let mut slow: Vec<Hyperplane> = Vec::new();
            for family in LineLabel::ALL {
                for l in -8i64..=8 {
                    for m in -8i64..=8 {
                        if let Some(h) = Hyperplane::new(family, l, m) {
                            if h.distance_sq_to(&p) <= r {
                                slow.push(h);
                            }
                        }
                    }
                }
            }
            slow.sort();
            assert_eq!(fast, slow);
        }
        assert_eq!(hyperplanes_through(&Quat::zero()).len(), 4);
        assert_eq!(hyperplanes_through(&Quat::from_ints(1, 0, 0, 1)).len(), 4);
        assert!(hyperplanes_through(&Quat::one()).is_empty());
    }

    proptest! {
        #[test]
        fn plane_points_are_fixed_by_their_reflection(
            fam in 0usize..4, l in -3i64..=3, m in -3i64..=3, s in -3i64..=3, t in -3i64..=3
        ) {
            prop_assume!((l + m) % 2 == 0);
            let h = Hyperplane::new(LineLabel::ALL[fam], l, m).unwrap();
            let d = Hyperplane::direction(h.family);
            let x = &h.basepoint() + &(&d.scale(&int(s)) + &(&d * &Quat::omega()).scale(&int(t)));
            prop_assert!(h.contains(&x));
            // the reflection of the family conjugated to the plane
            let r = r_q(h.family);
            let moved = r.conjugate_by_translation(&h.basepoint());
            prop_assert_eq!(moved.apply(&x), x);
        }
    }
}

//! Isometries of `H_ω` that preserve the complex structure:
//! `x ↦ q·x·ζ^ℓ + v` with `q` a unit quaternion.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hquat::{herm, int, ComplexScalar, Quat, Rational, ZetaPower};
use crate::linalg::{solve, AffineSolution};

/// Powers of the linear part are searched up to this bound; every finite
/// linear group used here has exponent dividing 12.
pub const ORDER_SEARCH_CAP: u32 = 12;

/// `f(x) = q·x·ζ^ℓ + v` in canonical form.
///
/// `(q, ℓ, v)` and `(−q, ℓ+3, v)` describe the same map; the stored
/// representative has the first nonzero coordinate of `q` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EuclideanMap {
    q: Quat,
    l: ZetaPower,
    v: Quat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSet {
    Empty,
    Point(Quat),
    /// `basepoint + direction·ℂ`; the basepoint is the point of the line
    /// closest to the origin.
    ComplexLine { basepoint: Quat, direction: Quat },
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedKind {
    Empty,
    Point,
    ComplexLine,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryClass {
    Identity,
    Translation,
    Reflection,
    PointIsometry,
    Glide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

fn first_nonzero_negative(q: &Quat) -> bool {
    q.coords()
        .into_iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
}

impl EuclideanMap {
    pub fn new(q: Quat, l: ZetaPower, v: Quat) -> Result<EuclideanMap> {
        if q.norm() != int(1) {
            return Err(Error::Parse {
                what: "euclidean map",
                input: q.to_string(),
                reason: "linear factor is not a unit quaternion".into(),
            });
        }
        Ok(EuclideanMap::from_parts(q, l, v))
    }

    /// Caller guarantees `norm(q) = 1`.
    pub(crate) fn from_parts(q: Quat, l: ZetaPower, v: Quat) -> EuclideanMap {
        debug_assert_eq!(q.norm(), int(1));
        if first_nonzero_negative(&q) {
            EuclideanMap { q: -q, l: l + ZetaPower::new(3), v }
        } else {
            EuclideanMap { q, l, v }
        }
    }

    pub fn identity() -> EuclideanMap {
        EuclideanMap::from_parts(Quat::one(), ZetaPower::ONE, Quat::zero())
    }

    pub fn translation(v: Quat) -> EuclideanMap {
        EuclideanMap::from_parts(Quat::one(), ZetaPower::ONE, v)
    }

    pub fn linear(q: Quat, l: ZetaPower) -> Result<EuclideanMap> {
        EuclideanMap::new(q, l, Quat::zero())
    }

    /// `L_q(x) = q·x`.
    pub fn left(q: Quat) -> Result<EuclideanMap> {
        EuclideanMap::linear(q, ZetaPower::ONE)
    }

    /// `x ↦ −x + 2p`, the point reflection through `p`.
    pub fn antipodal_at(p: &Quat) -> EuclideanMap {
        EuclideanMap::from_parts(-Quat::one(), ZetaPower::ONE, p.scale(&int(2)))
    }

    pub fn q(&self) -> &Quat {
        &self.q
    }

    pub fn zeta_power(&self) -> ZetaPower {
        self.l
    }

    pub fn v(&self) -> &Quat {
        &self.v
    }

    pub fn linear_part(&self) -> EuclideanMap {
        EuclideanMap {
            q: self.q.clone(),
            l: self.l,
            v: Quat::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear_is_identity() && self.v.is_zero()
    }

    pub fn linear_is_identity(&self) -> bool {
        self.q == Quat::one() && self.l == ZetaPower::ONE
    }

    pub fn apply(&self, x: &Quat) -> Quat {
        &(&(&self.q * x) * self.l.to_quat()) + &self.v
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EuclideanMap) -> EuclideanMap {
        let q = &self.q * &other.q;
        let v = &(&(&self.q * &other.v) * self.l.to_quat()) + &self.v;
        EuclideanMap::from_parts(q, self.l + other.l, v)
    }

    pub fn invert(&self) -> EuclideanMap {
        let q_inv = self.q.conj();
        let l_inv = self.l.inverse();
        let v = -(&(&q_inv * &self.v) * l_inv.to_quat());
        EuclideanMap::from_parts(q_inv, l_inv, v)
    }

    pub fn pow(&self, n: u32) -> EuclideanMap {
        (0..n).fold(EuclideanMap::identity(), |acc, _| acc.compose(self))
    }

    /// `t_p ∘ self ∘ t_p⁻¹`.
    pub fn conjugate_by_translation(&self, p: &Quat) -> EuclideanMap {
        EuclideanMap::translation(p.clone())
            .compose(self)
            .compose(&EuclideanMap::translation(-p))
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &EuclideanMap) -> EuclideanMap {
        g.compose(self).compose(&g.invert())
    }

    /// Real 4×4 matrix of the linear part; column `n` is the image of the
    /// `n`-th basis quaternion.
    pub fn real_matrix(&self) -> [[Rational; 4]; 4] {
        let basis = [Quat::one(), Quat::i(), Quat::j(), Quat::k()];
        let images: Vec<[Rational; 4]> = basis
            .iter()
            .map(|e| self.linear_part().apply(e).into_coords())
            .collect();
        std::array::from_fn(|r| std::array::from_fn(|c| images[c][r].clone()))
    }

    /// Solution space of `(M − λ·ζ^s)x = rhs` where `M` is the linear part
    /// and the second term is right multiplication by `ζ^s`.
    fn solve_against_right_mult(&self, s: ZetaPower, rhs: &Quat) -> Option<AffineSolution> {
        let m = self.real_matrix();
        let r = EuclideanMap::from_parts(Quat::one(), s, Quat::zero()).real_matrix();
        let rows: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| &m[i][j] - &r[i][j]).collect())
            .collect();
        let rhs: Vec<Rational> = rhs.clone().into_coords().to_vec();
        solve(&rows, &rhs, 4)
    }

    /// Exact solution set of `f(x) = x`.
    pub fn fixed_set(&self) -> FixedSet {
        // q x ζ^ℓ + v = x  ⇔  (M − I) x = −v
        let Some(sol) = self.solve_against_right_mult(ZetaPower::ONE, &-&self.v) else {
            return FixedSet::Empty;
        };
        let p = Quat::from_coords(sol.particular.clone().try_into().unwrap());
        match sol.dimension() {
            0 => FixedSet::Point(p),
            2 => {
                let direction = Quat::from_coords(sol.kernel[0].clone().try_into().unwrap());
                let basepoint = &p - &project_onto_line(&direction, &p);
                FixedSet::ComplexLine { basepoint, direction }
            }
            4 => FixedSet::All,
            d => unreachable!("complex-linear fixed space of odd real dimension {d}"),
        }
    }

    /// For a linear reflection `q·x·z`, the complex line rotated by `z²`.
    pub fn rotated_line(&self) -> Option<Quat> {
        let sol = self.solve_against_right_mult(self.l.times(2), &Quat::zero())?;
        (sol.dimension() == 2).then(|| Quat::from_coords(sol.kernel[0].clone().try_into().unwrap()))
    }

    pub fn classify(&self) -> IsometryClass {
        if self.linear_is_identity() {
            return if self.v.is_zero() {
                IsometryClass::Identity
            } else {
                IsometryClass::Translation
            };
        }
        match self.fixed_set() {
            FixedSet::Empty => IsometryClass::Glide,
            FixedSet::All => unreachable!("nontrivial linear part fixes everything"),
            _ if self.q.real() == self.l.to_quat().real() => IsometryClass::Reflection,
            _ => IsometryClass::PointIsometry,
        }
    }

    /// Least `n ≥ 1` with `fⁿ = id`, searching linear orders up to
    /// [`ORDER_SEARCH_CAP`].
    pub fn order_of(&self) -> Order {
        let mut power = self.clone();
        for n in 1..=ORDER_SEARCH_CAP {
            if power.linear_is_identity() {
                return if power.v.is_zero() {
                    Order::Finite(n)
                } else {
                    Order::Infinite
                };
            }
            power = power.compose(self);
        }
        Order::Infinite
    }

    /// The 2×2 complex matrix of the linear map in the ordered basis
    /// `(b1, b2)`, acting on coordinate columns.
    pub fn matrix_of_linear(&self, basis: (&Quat, &Quat)) -> Result<[[ComplexScalar; 2]; 2]> {
        if !self.v.is_zero() {
            return Err(Error::NotLinear);
        }
        let cols = [
            coordinates(basis, &self.apply(basis.0))?,
            coordinates(basis, &self.apply(basis.1))?,
        ];
        Ok([
            [cols[0][0].clone(), cols[1][0].clone()],
            [cols[0][1].clone(), cols[1][1].clone()],
        ])
    }
}

/// The real orthogonal projection of `x` onto the complex line `d·ℂ`.
pub fn project_onto_line(d: &Quat, x: &Quat) -> Quat {
    let h = herm(d, x);
    (d * &h.to_quat()).scale(&d.norm().recip())
}

/// Coordinates `(z1, z2)` with `x = b1·z1 + b2·z2`.
pub fn coordinates(basis: (&Quat, &Quat), x: &Quat) -> Result<[ComplexScalar; 2]> {
    let (b1, b2) = basis;
    let g11 = herm(b1, b1);
    let g12 = herm(b1, b2);
    let g21 = herm(b2, b1);
    let g22 = herm(b2, b2);
    let det = &(&g11 * &g22) - &(&g12 * &g21);
    let det_inv = det.inverse().ok_or(Error::DegenerateBasis)?;
    let h1 = herm(b1, x);
    let h2 = herm(b2, x);
    let z1 = &(&(&g22 * &h1) - &(&g12 * &h2)) * &det_inv;
    let z2 = &(&(&g11 * &h2) - &(&g21 * &h1)) * &det_inv;
    Ok([z1, z2])
}

impl FixedSet {
    pub fn kind(&self) -> FixedKind {
        match self {
            FixedSet::Empty => FixedKind::Empty,
            FixedSet::Point(_) => FixedKind::Point,
            FixedSet::ComplexLine { .. } => FixedKind::ComplexLine,
            FixedSet::All => FixedKind::All,
        }
    }

    pub fn contains(&self, x: &Quat) -> bool {
        match self {
            FixedSet::Empty => false,
            FixedSet::Point(p) => p == x,
            FixedSet::ComplexLine { basepoint, direction } => {
                let offset = x - basepoint;
                project_onto_line(direction, &offset) == offset
            }
            FixedSet::All => true,
        }
    }

    /// Is this the complex line `basepoint + direction·ℂ`?
    pub fn is_line(&self, basepoint: &Quat, direction: &Quat) -> bool {
        match self {
            FixedSet::ComplexLine { direction: d, .. } => {
                self.contains(basepoint) && project_onto_line(d, direction) == *direction
            }
            _ => false,
        }
    }
}

impl fmt::Display for EuclideanMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.q, self.l, self.v)
    }
}

/// Parses `(q; ℓ; v)`; the result is put in canonical form.
impl FromStr for EuclideanMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<EuclideanMap> {
        let fail = |reason: &str| Error::Parse {
            what: "euclidean map",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| fail("expected parentheses"))?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 3 {
            return Err(fail("expected three ';'-separated parts"));
        }
        let q: Quat = parts[0].parse()?;
        let l: i64 = parts[1].trim().parse().map_err(|_| fail("bad ζ exponent"))?;
        let v: Quat = parts[2].parse()?;
        EuclideanMap::new(q, ZetaPower::new(l), v)
    }
}

impl Serialize for EuclideanMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.q, self.l, &self.v).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EuclideanMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (q, l, v) = <(Quat, ZetaPower, Quat)>::deserialize(deserializer)?;
        EuclideanMap::new(q, ZetaPower::new(l.exponent() as i64), v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hquat::rat;
    use proptest::prelude::*;

    fn r1() -> EuclideanMap {
        EuclideanMap::linear(Quat::zeta(), ZetaPower::new(1)).unwrap()
    }

    fn r1_prime() -> EuclideanMap {
        EuclideanMap::new(Quat::zeta(), ZetaPower::new(1), Quat::from_ints(2, 0, 0, 0)).unwrap()
    }

    fn t2() -> EuclideanMap {
        EuclideanMap::translation(Quat::from_ints(2, 0, 0, 0))
    }

    /// Rational unit quaternions from Pythagorean quadruples.
    fn unit_quat() -> impl Strategy<Value = Quat> {
        let quads = [(1, 2, 2, 3), (2, 3, 6, 7), (1, 4, 8, 9), (2, 6, 9, 11), (0, 3, 4, 5)];
        (0usize..5, 0usize..24, 0u8..16).prop_map(move |(n, perm, signs)| {
            let (x, y, z, w) = quads[n];
            let mut c = [x, y, z, 0];
            c.swap(0, perm % 3);
            let mut coords = [c[0], c[1], c[2], c[3]];
            coords.swap(3, perm % 4);
            for (bit, v) in coords.iter_mut().enumerate() {
                if signs & (1 << bit) != 0 {
                    *v = -*v;
                }
            }
            Quat::new(rat(coords[0], w), rat(coords[1], w), rat(coords[2], w), rat(coords[3], w))
        })
    }

    fn any_quat() -> impl Strategy<Value = Quat> {
        (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6, 1i64..=4)
            .prop_map(|(a, b, c, d, den)| Quat::new(rat(a, den), rat(b, den), rat(c, den), rat(d, den)))
    }

    fn any_map() -> impl Strategy<Value = EuclideanMap> {
        (unit_quat(), 0i64..6, any_quat())
            .prop_map(|(q, l, v)| EuclideanMap::new(q, ZetaPower::new(l), v).unwrap())
    }

    #[test]
    fn canonical_sign_rule() {
        let minus = EuclideanMap::linear(-Quat::one(), ZetaPower::new(3)).unwrap();
        assert!(minus.is_identity());
        let antipodal = EuclideanMap::antipodal_at(&Quat::one());
        assert_eq!(antipodal.q(), &Quat::one());
        assert_eq!(antipodal.zeta_power(), ZetaPower::new(3));
    }

    #[test]
    fn composition_examples() {
        let f = r1_prime();
        assert_eq!(f.compose(&EuclideanMap::identity()), f);
        assert_eq!(r1_prime().compose(&r1().invert()), t2());
        let square = r1().compose(&r1());
        assert_eq!(square, EuclideanMap::linear(Quat::omega(), ZetaPower::new(2)).unwrap());
    }

    #[test]
    fn application_examples() {
        assert_eq!(r1().apply(&Quat::one()), Quat::omega());
        assert_eq!(r1().apply(&Quat::i()), Quat::halves(-1, 1, -1, -1));
        let p = Quat::from_ints(1, 0, 0, 1);
        assert_eq!(r1_prime().apply(&p), p);
    }

    #[test]
    fn fixed_set_examples() {
        let fix = r1().fixed_set();
        assert_eq!(fix.kind(), FixedKind::ComplexLine);
        assert!(fix.is_line(&Quat::zero(), &Quat::from_ints(0, 1, -1, 0)));
        if let FixedSet::ComplexLine { basepoint, .. } = &fix {
            assert!(basepoint.is_zero());
        }
        assert_eq!(t2().fixed_set(), FixedSet::Empty);
        let point_reflection = EuclideanMap::antipodal_at(&Quat::one());
        assert_eq!(point_reflection.fixed_set(), FixedSet::Point(Quat::one()));
        assert_eq!(EuclideanMap::identity().fixed_set(), FixedSet::All);
        let shifted = r1_prime().fixed_set();
        assert!(shifted.is_line(&Quat::from_ints(1, 0, 0, 1), &Quat::from_ints(0, 1, -1, 0)));
        assert!(!shifted.contains(&Quat::zero()));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(r1().classify(), IsometryClass::Reflection);
        assert_eq!(EuclideanMap::left(Quat::i()).unwrap().classify(), IsometryClass::PointIsometry);
        let t = EuclideanMap::translation(Quat::zeta().scale(&int(2)));
        assert_eq!(t.classify(), IsometryClass::Translation);
        assert_eq!(EuclideanMap::identity().classify(), IsometryClass::Identity);
        // a reflection's linear part followed by a translation along its mirror
        let glide = EuclideanMap::translation(Quat::from_ints(0, 1, -1, 0)).compose(&r1());
        assert_eq!(glide.classify(), IsometryClass::Glide);
    }

    #[test]
    fn order_examples() {
        assert_eq!(r1().order_of(), Order::Finite(3));
        let v = Quat::from_ints(1, 1, 0, 0);
        assert_eq!(EuclideanMap::antipodal_at(&v).order_of(), Order::Finite(2));
        assert_eq!(t2().order_of(), Order::Infinite);
        assert_eq!(EuclideanMap::identity().order_of(), Order::Finite(1));
        assert_eq!(EuclideanMap::left(Quat::i()).unwrap().order_of(), Order::Finite(4));
    }

    #[test]
    fn matrix_examples() {
        let r_omega = EuclideanMap::linear(Quat::one(), ZetaPower::new(2)).unwrap();
        let b1 = Quat::one();
        let b2 = Quat::from_ints(0, 1, -1, 0);
        let m = r_omega.matrix_of_linear((&b1, &b2)).unwrap();
        assert_eq!(m[0][0], ComplexScalar::omega());
        assert_eq!(m[1][1], ComplexScalar::omega());
        assert!(m[0][1].is_zero() && m[1][0].is_zero());
        let id = EuclideanMap::identity().matrix_of_linear((&b1, &b2)).unwrap();
        assert_eq!(id[0][0], ComplexScalar::one());
        assert_eq!(id[1][1], ComplexScalar::one());
        assert!(id[0][1].is_zero() && id[1][0].is_zero());
        // L_ω rotates the orthogonal line the other way
        let l_omega = EuclideanMap::left(Quat::omega()).unwrap();
        let m = l_omega.matrix_of_linear((&b1, &b2)).unwrap();
        assert_eq!(m[0][0], ComplexScalar::omega());
        assert_eq!(m[1][1], ComplexScalar::omega().conj());
        assert!(matches!(
            r1().matrix_of_linear((&b1, &Quat::omega())),
            Err(Error::DegenerateBasis)
        ));
        assert!(matches!(t2().matrix_of_linear((&b1, &b2)), Err(Error::NotLinear)));
    }

    #[test]
    fn text_and_json_forms() {
        let f = r1_prime();
        let text = f.to_string();
        assert_eq!(text, "(1/2+1/2i+1/2j+1/2k; 1; 2+0i+0j+0k)");
        assert_eq!(text.parse::<EuclideanMap>().unwrap(), f);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[[1,2,1,2,1,2,1,2],1,[2,1,0,1,0,1,0,1]]");
        assert_eq!(serde_json::from_str::<EuclideanMap>(&json).unwrap(), f);
        assert!("(1+i; 0; 0)".parse::<EuclideanMap>().is_err());
        // the non-canonical representative parses to the canonical one
        let flipped: EuclideanMap = "(-1/2-1/2i-1/2j-1/2k; 4; 2)".parse().unwrap();
        assert_eq!(flipped, f);
    }

    proptest! {
        #[test]
        fn composition_is_the_action(f in any_map(), g in any_map(), x in any_quat()) {
            prop_assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
        }

        #[test]
        fn inverse_is_two_sided(f in any_map()) {
            prop_assert!(f.compose(&f.invert()).is_identity());
            prop_assert!(f.invert().compose(&f).is_identity());
        }

        #[test]
        fn maps_are_isometries(f in any_map(), x in any_quat(), y in any_quat()) {
            prop_assert_eq!((&f.apply(&x) - &f.apply(&y)).norm(), (&x - &y).norm());
        }

        #[test]
        fn fixed_points_are_fixed(f in any_map()) {
            match f.fixed_set() {
                FixedSet::Point(p) => prop_assert_eq!(f.apply(&p), p),
                FixedSet::ComplexLine { basepoint, direction } => {
                    prop_assert!(!direction.is_zero());
                    prop_assert_eq!(f.apply(&basepoint), basepoint.clone());
                    let other = &basepoint + &(&direction * &Quat::omega());
                    prop_assert_eq!(f.apply(&other), other);
                }
                _ => {}
            }
        }

        #[test]
        fn class_is_conjugation_invariant(f in any_map(), g in any_map()) {
            prop_assert_eq!(f.conjugate_by(&g).classify(), f.classify());
        }

        #[test]
        fn reflections_fix_a_line_orthogonal_to_the_rotated_line(
            p in unit_quat(), l in prop::sample::select(vec![1i64, 2, 4, 5]), v in any_quat()
        ) {
            // (p ζ^ℓ p⁻¹) x ζ^ℓ is a reflection by construction
            let z = ZetaPower::new(l);
            let q = &(&p * z.to_quat()) * &p.conj();
            let r = EuclideanMap::new(q, z, Quat::zero()).unwrap();
            prop_assert_eq!(r.classify(), IsometryClass::Reflection);
            let FixedSet::ComplexLine { direction, .. } = r.fixed_set() else {
                return Err(TestCaseError::fail("reflection without a fixed line"));
            };
            let rotated = r.rotated_line().unwrap();
            prop_assert!(herm(&direction, &rotated).is_zero());
            prop_assert!(project_onto_line(&rotated, &p) == p);
            // translated copies remain reflections with a line of fixed points
            let moved = r.conjugate_by_translation(&v);
            prop_assert_eq!(moved.classify(), IsometryClass::Reflection);
            prop_assert_eq!(moved.fixed_set().kind(), FixedKind::ComplexLine);
        }
    }
}

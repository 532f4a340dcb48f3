//! The root system Φ (the 24 unit Hurwitz quaternions), the Hurwitz lattice
//! Λ, its D4 sublattice and the translation lattice 2Λ.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hquat::{int, Quat, Rational, ZetaPower};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LatticeTag {
    /// Hurwitz integers.
    Lambda,
    /// Integer quaternions with even coordinate sum.
    LambdaD4,
    /// Twice the Hurwitz integers; the translation subgroup.
    TwoLambda,
}

impl LatticeTag {
    fn depth(self) -> u8 {
        match self {
            LatticeTag::Lambda => 0,
            LatticeTag::LambdaD4 => 1,
            LatticeTag::TwoLambda => 2,
        }
    }
}

/// Names the complex line `qℂ` for `q ∈ {1, i, j, k}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum LineLabel {
    One,
    I,
    J,
    K,
}

impl LineLabel {
    pub const ALL: [LineLabel; 4] = [LineLabel::One, LineLabel::I, LineLabel::J, LineLabel::K];

    pub fn to_quat(self) -> Quat {
        match self {
            LineLabel::One => Quat::one(),
            LineLabel::I => Quat::i(),
            LineLabel::J => Quat::j(),
            LineLabel::K => Quat::k(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineLabel::One => "1",
            LineLabel::I => "i",
            LineLabel::J => "j",
            LineLabel::K => "k",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum VertexClass {
    CellCenter,
    Vertex,
    Neither,
}

/// The 24 unit Hurwitz quaternions in a fixed order: `±1, ±i, ±j, ±k`, then
/// `(±1±i±j±k)/2` with sign patterns in lexicographic order (`+` first).
#[derive(Clone, Debug)]
pub struct RootSystem {
    elements: Vec<Quat>,
}

impl RootSystem {
    pub fn standard() -> &'static RootSystem {
        static PHI: OnceLock<RootSystem> = OnceLock::new();
        PHI.get_or_init(|| {
            let mut elements = Vec::with_capacity(24);
            for n in 0..4 {
                for sign in [1, -1] {
                    let mut c = [0i64; 4];
                    c[n] = sign;
                    elements.push(Quat::from_ints(c[0], c[1], c[2], c[3]));
                }
            }
            for mask in 0..16u32 {
                let s = |bit: u32| if mask & (8 >> bit) == 0 { 1 } else { -1 };
                elements.push(Quat::halves(s(0), s(1), s(2), s(3)));
            }
            RootSystem { elements }
        })
    }

    /// An arbitrary list, used to exercise the checks on corrupted tables.
    pub fn from_elements_unchecked(elements: Vec<Quat>) -> RootSystem {
        RootSystem { elements }
    }

    pub fn elements(&self) -> &[Quat] {
        &self.elements
    }

    pub fn contains(&self, x: &Quat) -> bool {
        self.elements.contains(x)
    }

    /// Closure, identity, inverses and unit norms, checked by enumeration.
    pub fn is_unit_group(&self) -> bool {
        let one = Quat::one();
        self.elements.iter().all(|x| x.norm() == int(1))
            && self.contains(&one)
            && self
                .elements
                .iter()
                .all(|x| self.contains(&x.conj()) && self.elements.iter().all(|y| self.contains(&(x * y))))
    }
}

/// Is `x` (times two) a vector of integers?
pub(crate) fn doubled_integers(x: &Quat) -> Option<[BigInt; 4]> {
    let two = int(2);
    let mut out: Vec<BigInt> = Vec::with_capacity(4);
    for c in x.coords() {
        let d: Rational = c * &two;
        if !d.is_integer() {
            return None;
        }
        out.push(d.to_integer());
    }
    Some(out.try_into().expect("four coordinates"))
}

pub fn in_lattice(x: &Quat, tag: LatticeTag) -> bool {
    match tag {
        LatticeTag::Lambda => match doubled_integers(x) {
            Some(d) => {
                let parity = d[0].is_odd();
                d.iter().all(|v| v.is_odd() == parity)
            }
            None => false,
        },
        LatticeTag::LambdaD4 => {
            x.coords().iter().all(|c| c.is_integer()) && x.coordinate_sum().to_integer().is_even()
        }
        LatticeTag::TwoLambda => in_lattice(&x.scale(&Rational::new(1.into(), 2.into())), LatticeTag::Lambda),
    }
}

/// Index `[sup : sub]`, found by counting lattice points of each in the
/// half-open box `[0, 2)^4`, a fundamental domain for `2ℤ^4 ⊂ 2Λ`.
pub fn coset_index(sub: LatticeTag, sup: LatticeTag) -> Result<usize> {
    if sub.depth() < sup.depth() {
        return Err(Error::InvalidLatticePair { sub, sup });
    }
    let count = |tag: LatticeTag| -> usize {
        let mut n = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if in_lattice(&Quat::halves(a, b, c, d), tag) {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    };
    Ok(count(sup) / count(sub))
}

/// The unique `(q, ℓ)` with `x = q·ζ^ℓ` and `q ∈ {1, i, j, k}`.
pub fn phi_decompose(x: &Quat) -> Result<(LineLabel, ZetaPower)> {
    for label in LineLabel::ALL {
        let q = label.to_quat();
        for l in 0..6 {
            let power = ZetaPower::new(l);
            if &(&q * power.to_quat()) == x {
                return Ok((label, power));
            }
        }
    }
    Err(Error::NotInRootSystem(x.to_string()))
}

pub fn vertex_class(x: &Quat) -> VertexClass {
    if in_lattice(x, LatticeTag::LambdaD4) {
        VertexClass::CellCenter
    } else if in_lattice(x, LatticeTag::Lambda) {
        VertexClass::Vertex
    } else {
        VertexClass::Neither
    }
}

/// Canonical representative of `x + 2Λ` for `x ∈ Λ`.
///
/// Coordinates in the basis `(ζ, i, j, k)` of Λ are reduced mod 2.
pub fn reduce_mod_two_lambda(x: &Quat) -> Quat {
    let d = doubled_integers(x).expect("reduce_mod_two_lambda needs a Hurwitz integer");
    let n0 = d[0].clone();
    let shift = |v: &BigInt| -> i64 {
        // (2v − 2a)/2 = v − a in the doubled coordinates
        let diff: BigInt = (v - &d[0]) / 2;
        diff.mod_floor(&BigInt::from(2)).to_i64().unwrap()
    };
    let m0 = n0.mod_floor(&BigInt::from(2)).to_i64().unwrap();
    let (m1, m2, m3) = (shift(&d[1]), shift(&d[2]), shift(&d[3]));
    let mut rep = Quat::zeta().scale(&int(m0));
    rep = rep + Quat::from_ints(0, m1, m2, m3);
    debug_assert!(in_lattice(&(x - &rep), LatticeTag::TwoLambda));
    rep
}

#[derive(Serialize)]
pub struct RootEntry {
    pub element: Quat,
    pub text: String,
    pub line: LineLabel,
    pub zeta_power: ZetaPower,
}

/// Φ annotated with its `(line, ζ-power)` decomposition.
pub fn root_system_entries() -> Vec<RootEntry> {
    RootSystem::standard()
        .elements()
        .iter()
        .map(|x| {
            let (line, zeta_power) = phi_decompose(x).expect("Φ decomposes");
            RootEntry {
                element: x.clone(),
                text: x.to_string(),
                line,
                zeta_power,
            }
        })
        .collect()
}

/// All points of `Λ_D4` with `norm ≤ radius_sq`, sorted.
pub fn d4_points_in_ball(radius_sq: &Rational) -> Vec<Quat> {
    let bound = isqrt_floor(radius_sq);
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if (a + b + c + d) % 2 != 0 {
                        continue;
                    }
                    let x = Quat::from_ints(a, b, c, d);
                    if &x.norm() <= radius_sq {
                        out.push(x);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Largest `n ≥ 0` with `n² ≤ r` (0 for negative `r`).
pub(crate) fn isqrt_floor(r: &Rational) -> i64 {
    if r <= &Rational::zero() {
        return 0;
    }
    let mut n: i64 = 0;
    while int((n + 1) * (n + 1)) <= *r {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hquat::rat;
    use proptest::prelude::*;

    #[test]
    fn root_system_is_a_group_of_order_24() {
        let phi = RootSystem::standard();
        assert_eq!(phi.elements().len(), 24);
        assert!(phi.is_unit_group());
        let mut broken = phi.elements().to_vec();
        broken[23] = Quat::from_ints(1, 1, 0, 0);
        assert!(!RootSystem::from_elements_unchecked(broken).is_unit_group());
    }

    #[test]
    fn membership_examples() {
        assert!(in_lattice(&Quat::zeta(), LatticeTag::Lambda));
        assert!(in_lattice(&Quat::from_ints(1, 0, 0, 1), LatticeTag::LambdaD4));
        assert!(!in_lattice(&Quat::one(), LatticeTag::LambdaD4));
        assert!(in_lattice(&Quat::from_ints(2, 0, 0, 0), LatticeTag::TwoLambda));
        assert!(!in_lattice(&Quat::from_ints(1, 0, 0, 1), LatticeTag::TwoLambda));
        assert!(in_lattice(&Quat::from_ints(1, 1, 1, 1), LatticeTag::TwoLambda));
        assert!(!in_lattice(&Quat::halves(1, 1, 1, 0), LatticeTag::Lambda));
    }

    #[test]
    fn indices() {
        use LatticeTag::*;
        assert_eq!(coset_index(TwoLambda, LambdaD4).unwrap(), 4);
        assert_eq!(coset_index(LambdaD4, Lambda).unwrap(), 4);
        assert_eq!(coset_index(TwoLambda, Lambda).unwrap(), 16);
        assert_eq!(coset_index(Lambda, Lambda).unwrap(), 1);
        assert!(coset_index(Lambda, TwoLambda).is_err());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(phi_decompose(&Quat::omega()).unwrap(), (LineLabel::One, ZetaPower::new(2)));
        assert_eq!(
            phi_decompose(&Quat::halves(-1, 1, -1, -1)).unwrap(),
            (LineLabel::J, ZetaPower::new(2))
        );
        assert_eq!(phi_decompose(&-Quat::one()).unwrap(), (LineLabel::One, ZetaPower::new(3)));
        assert!(phi_decompose(&Quat::from_ints(1, 1, 0, 0)).is_err());
    }

    #[test]
    fn decomposition_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for x in RootSystem::standard().elements() {
            assert!(seen.insert(phi_decompose(x).unwrap()));
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn vertex_class_examples() {
        assert_eq!(vertex_class(&Quat::zero()), VertexClass::CellCenter);
        assert_eq!(vertex_class(&Quat::one()), VertexClass::Vertex);
        assert_eq!(vertex_class(&Quat::halves(0, 1, -1, 0)), VertexClass::Neither);
    }

    #[test]
    fn vertices_differ_from_centers_by_roots() {
        let phi = RootSystem::standard();
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    for d in -3..=3 {
                        let x = Quat::halves(a, b, c, d);
                        if vertex_class(&x) == VertexClass::Vertex {
                            assert!(phi
                                .elements()
                                .iter()
                                .any(|u| in_lattice(&(&x - u), LatticeTag::LambdaD4)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ball_enumeration() {
        assert_eq!(d4_points_in_ball(&int(0)), vec![Quat::zero()]);
        // origin plus the 24 roots of D4
        assert_eq!(d4_points_in_ball(&int(2)).len(), 25);
        assert_eq!(d4_points_in_ball(&rat(3, 2)).len(), 1);
    }

    proptest! {
        #[test]
        fn lattice_chain(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9) {
            let x = Quat::halves(a, b, c, d);
            if in_lattice(&x, LatticeTag::TwoLambda) {
                prop_assert!(in_lattice(&x, LatticeTag::LambdaD4));
            }
            if in_lattice(&x, LatticeTag::LambdaD4) {
                prop_assert!(in_lattice(&x, LatticeTag::Lambda));
            }
        }

        #[test]
        fn reduction_mod_two_lambda_is_canonical(a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4,
                                                 odd in any::<bool>(), m in 0usize..24, n in 0usize..24) {
            let p = i64::from(odd);
            let x = Quat::halves(2 * a + p, 2 * b + p, 2 * c + p, 2 * d + p);
            prop_assert!(in_lattice(&x, LatticeTag::Lambda));
            let phi = RootSystem::standard().elements();
            let shifted = &x + &(&phi[m] + &phi[n]).scale(&int(2));
            prop_assert_eq!(reduce_mod_two_lambda(&x), reduce_mod_two_lambda(&shifted));
        }
    }
}

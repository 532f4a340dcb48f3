//! Exact rational quaternions and the right complex structure `H_ω`.
//!
//! The distinguished copy of ℂ inside ℍ is `span(1, ω)` with
//! `ω = (−1+i+j+k)/2`. Complex scalars are stored in the basis `(1, ω)` so
//! that every coordinate stays rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact scalar field for every coordinate in the crate.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A quaternion `a + bi + cj + dk` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Quat {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quat {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quat { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quat::new(int(a), int(b), int(c), int(d))
    }

    /// `(a + bi + cj + dk) / 2` from integer numerators.
    pub fn halves(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quat::new(rat(a, 2), rat(b, 2), rat(c, 2), rat(d, 2))
    }

    pub fn from_coords(coords: [Rational; 4]) -> Self {
        let [a, b, c, d] = coords;
        Quat { a, b, c, d }
    }

    pub fn zero() -> Self {
        Quat::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quat::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quat::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quat::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quat::from_ints(0, 0, 0, 1)
    }

    /// `ζ = (1+i+j+k)/2`, a primitive sixth root of unity.
    pub fn zeta() -> Self {
        Quat::halves(1, 1, 1, 1)
    }

    /// `ω = ζ² = (−1+i+j+k)/2`, a primitive cube root of unity.
    pub fn omega() -> Self {
        Quat::halves(-1, 1, 1, 1)
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn into_coords(self) -> [Rational; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Quat {
        Quat::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    /// `q q̄ = a² + b² + c² + d²`.
    pub fn norm(&self) -> Rational {
        self.dot(self)
    }

    pub fn real(&self) -> Rational {
        self.a.clone()
    }

    /// The euclidean inner product of the underlying 4-vectors.
    pub fn dot(&self, other: &Quat) -> Rational {
        &self.a * &other.a + &self.b * &other.b + &self.c * &other.c + &self.d * &other.d
    }

    pub fn scale(&self, s: &Rational) -> Quat {
        Quat::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Quat> {
        let n = self.norm();
        if n.is_zero() {
            None
        } else {
            Some(self.conj().scale(&n.recip()))
        }
    }

    /// Sum of the four coordinates; its parity decides `Λ_D4` membership.
    pub fn coordinate_sum(&self) -> Rational {
        &self.a + &self.b + &self.c + &self.d
    }

    /// JSON form: `[a_num, a_den, b_num, b_den, c_num, c_den, d_num, d_den]`.
    pub fn to_json_ints(&self) -> Result<[i64; 8]> {
        let mut out = [0i64; 8];
        for (n, x) in self.coords().into_iter().enumerate() {
            out[2 * n] = to_i64(x.numer())?;
            out[2 * n + 1] = to_i64(x.denom())?;
        }
        Ok(out)
    }

    pub fn from_json_ints(v: &[i64; 8]) -> Result<Quat> {
        let mut coords = Vec::with_capacity(4);
        for n in 0..4 {
            let den = v[2 * n + 1];
            if den <= 0 {
                return Err(Error::Parse {
                    what: "quaternion",
                    input: format!("{v:?}"),
                    reason: format!("denominator {den} is not positive"),
                });
            }
            coords.push(rat(v[2 * n], den));
        }
        let [a, b, c, d]: [Rational; 4] = coords.try_into().expect("four coordinates");
        Ok(Quat::new(a, b, c, d))
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::IntegerOverflow(x.to_string()))
}

impl Mul for &Quat {
    type Output = Quat;

    fn mul(self, y: &Quat) -> Quat {
        let x = self;
        Quat {
            a: &x.a * &y.a - &x.b * &y.b - &x.c * &y.c - &x.d * &y.d,
            b: &x.a * &y.b + &x.b * &y.a + &x.c * &y.d - &x.d * &y.c,
            c: &x.a * &y.c - &x.b * &y.d + &x.c * &y.a + &x.d * &y.b,
            d: &x.a * &y.d + &x.b * &y.c - &x.c * &y.b + &x.d * &y.a,
        }
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, y: Quat) -> Quat {
        &self * &y
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, y: &Quat) -> Quat {
        Quat::new(&self.a + &y.a, &self.b + &y.b, &self.c + &y.c, &self.d + &y.d)
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, y: Quat) -> Quat {
        &self + &y
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, y: &Quat) -> Quat {
        Quat::new(&self.a - &y.a, &self.b - &y.b, &self.c - &y.c, &self.d - &y.d)
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, y: Quat) -> Quat {
        &self - &y
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        -&self
    }
}

fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer coefficients with zero terms and unit coefficients omitted.
fn fmt_integral(coords: [&Rational; 4]) -> String {
    let mut out = String::new();
    for (x, unit) in coords.into_iter().zip(["", "i", "j", "k"]) {
        if x.is_zero() {
            continue;
        }
        let magnitude = x.abs();
        if x.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !magnitude.is_one() || unit.is_empty() {
            out.push_str(&fmt_rational(&magnitude));
        }
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Quat {
    /// Compact label: `1+k`, `-i`, `(i-k)/2`; other rationals fall back to
    /// the canonical form.
    pub fn label(&self) -> String {
        if self.coords().iter().all(|x| x.is_integer()) {
            return fmt_integral(self.coords());
        }
        let doubled = self.scale(&int(2));
        if doubled.coords().iter().all(|x| x.is_integer()) {
            return format!("({})/2", fmt_integral(doubled.coords()));
        }
        self.to_string()
    }
}

/// Canonical text `a+bi+cj+dk`, every coefficient present, rationals as `p/q`.
impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.a))?;
        for (x, unit) in [(&self.b, 'i'), (&self.c, 'j'), (&self.d, 'k')] {
            if x.is_negative() {
                write!(f, "-{}{unit}", fmt_rational(&-x))?;
            } else {
                write!(f, "+{}{unit}", fmt_rational(x))?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical form and the looser forms a person would type:
/// omitted terms, implicit unit coefficients (`i-j`), spaces.
impl FromStr for Quat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quat> {
        let fail = |reason: &str| Error::Parse {
            what: "quaternion",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(fail("empty input"));
        }
        let mut coords: [Option<Rational>; 4] = [None, None, None, None];
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(fail("expected '+' or '-' between terms"));
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let number = &text[start..pos];
            let unit = match bytes.get(pos) {
                Some(b'i') => 1,
                Some(b'j') => 2,
                Some(b'k') => 3,
                _ => 0,
            };
            if unit != 0 {
                pos += 1;
            }
            let mut value = if number.is_empty() {
                if unit == 0 {
                    return Err(fail("dangling sign"));
                }
                int(1)
            } else {
                parse_rational(number).ok_or_else(|| fail("malformed coefficient"))?
            };
            if negative {
                value = -value;
            }
            if coords[unit].is_some() {
                return Err(fail("repeated term"));
            }
            coords[unit] = Some(value);
        }
        let [a, b, c, d] = coords.map(|x| x.unwrap_or_else(|| int(0)));
        Ok(Quat::new(a, b, c, d))
    }
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Serialises a rational as its `n/d` string, for `serialize_with`.
pub fn serialize_rational<S: Serializer>(r: &Rational, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&r.to_string())
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_ints()
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Quat, D::Error> {
        let ints = <[i64; 8]>::deserialize(deserializer)?;
        Quat::from_json_ints(&ints).map_err(serde::de::Error::custom)
    }
}

/// A complex number `s + t·ω` of the distinguished subalgebra `span(1, ω)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ComplexScalar {
    pub s: Rational,
    pub t: Rational,
}

impl ComplexScalar {
    pub fn new(s: Rational, t: Rational) -> Self {
        ComplexScalar { s, t }
    }

    pub fn zero() -> Self {
        ComplexScalar::new(int(0), int(0))
    }

    pub fn one() -> Self {
        ComplexScalar::new(int(1), int(0))
    }

    pub fn omega() -> Self {
        ComplexScalar::new(int(0), int(1))
    }

    pub fn real(r: Rational) -> Self {
        ComplexScalar::new(r, int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    /// The embedding `s·1 + t·ω` into ℍ.
    pub fn to_quat(&self) -> Quat {
        let half_t = &self.t / int(2);
        Quat::new(&self.s - &half_t, half_t.clone(), half_t.clone(), half_t)
    }

    /// Complex conjugation; `ω̄ = ω² = −1 − ω`.
    pub fn conj(&self) -> ComplexScalar {
        ComplexScalar::new(&self.s - &self.t, -&self.t)
    }

    /// `|s + tω|² = s² − st + t²`.
    pub fn norm(&self) -> Rational {
        &self.s * &self.s - &self.s * &self.t + &self.t * &self.t
    }

    pub fn inverse(&self) -> Option<ComplexScalar> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(ComplexScalar::new(&c.s / &n, &c.t / &n))
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;

    // ω² = −1 − ω
    fn mul(self, y: &ComplexScalar) -> ComplexScalar {
        let tt = &self.t * &y.t;
        ComplexScalar::new(
            &self.s * &y.s - &tt,
            &self.s * &y.t + &self.t * &y.s - tt,
        )
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, y: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.s + &y.s, &self.t + &y.t)
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, y: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.s - &y.s, &self.t - &y.t)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_negative() {
            write!(f, "{}-{}ω", fmt_rational(&self.s), fmt_rational(&-&self.t))
        } else {
            write!(f, "{}+{}ω", fmt_rational(&self.s), fmt_rational(&self.t))
        }
    }
}

/// Orthogonal projection of `x` onto the subalgebra `span(1, ω)`.
///
/// The component along `i+j+k` is `(b+c+d)/3 · (i+j+k)`, which gives
/// `t = 2(b+c+d)/3` and `s = a + (b+c+d)/3`.
pub fn proj_c(x: &Quat) -> ComplexScalar {
    let third = (&x.b + &x.c + &x.d) / int(3);
    ComplexScalar::new(&x.a + &third, third * int(2))
}

/// Hermitian product `proj_c(x̄ · y)`: conjugate-linear in `x`, right
/// ℂ-linear in `y`, and `herm(x, x) = norm(x)`.
pub fn herm(x: &Quat, y: &Quat) -> ComplexScalar {
    proj_c(&(&x.conj() * y))
}

/// `ζ^ℓ` with the exponent taken mod 6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZetaPower(u8);

impl ZetaPower {
    pub const ONE: ZetaPower = ZetaPower(0);

    pub fn new(exponent: i64) -> Self {
        ZetaPower(exponent.rem_euclid(6) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_quat(self) -> &'static Quat {
        static TABLE: OnceLock<[Quat; 6]> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let zeta = Quat::zeta();
            let mut powers = vec![Quat::one()];
            for n in 1..6 {
                let next = &powers[n - 1] * &zeta;
                powers.push(next);
            }
            powers.try_into().expect("six powers")
        });
        &table[self.0 as usize]
    }

    /// `ζ^ℓ` as a complex scalar.
    pub fn to_complex(self) -> ComplexScalar {
        proj_c(self.to_quat())
    }

    pub fn inverse(self) -> ZetaPower {
        ZetaPower::new(-(self.0 as i64))
    }

    pub fn times(self, n: i64) -> ZetaPower {
        ZetaPower::new(self.0 as i64 * n)
    }
}

impl Add for ZetaPower {
    type Output = ZetaPower;
    fn add(self, y: ZetaPower) -> ZetaPower {
        ZetaPower::new(self.0 as i64 + y.0 as i64)
    }
}

impl fmt::Display for ZetaPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

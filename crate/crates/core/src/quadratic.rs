//! Exact numbers of the form `a + b√d` with rational `a`, `b` and squarefree
//! integer `d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a + b√d`. Canonical form: `d` squarefree and `d = 1` whenever `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: i64,
}

/// Splits `k = f² · s` with `s` squarefree (sign kept on `s`).
pub fn squarefree_decomposition(k: i64) -> (u64, i64) {
    assert!(k != 0, "squarefree part of zero");
    let sign = k.signum();
    let mut rest = k.unsigned_abs();
    let mut f = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s *= rest;
    (f, sign * s as i64)
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("radicand must be nonzero"));
        }
        let (f, s) = squarefree_decomposition(d);
        let b = b * BigRational::from_integer(BigInt::from(f));
        Ok(Self::canonical(a, b, s))
    }

    fn canonical(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            QuadraticNumber { a, b, d: 1 }
        } else if d == 1 {
            QuadraticNumber {
                a: a + b,
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            QuadraticNumber { a, b, d }
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `√k` in canonical form.
    pub fn sqrt_of(k: i64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), k)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_coefficient(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() || self.d > 0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Common radicand of two operands, if they can be combined.
    fn joint_radicand(&self, other: &Self) -> Result<i64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => Ok(other.d),
            (_, true) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(Error::domain(format!(
                "cannot combine radicands {} and {} in one quadratic number",
                self.d, other.d
            ))),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::canonical(&self.a * k, &self.b * k, self.d)
    }

    /// Multiplicative inverse, `(a − b√d) / (a² − b²d)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        Ok(Self::canonical(&self.a / &norm, -&self.b / &norm, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Image under `√d ↦ −√d`.
    pub fn galois_conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Complex conjugate; the identity on real numbers.
    pub fn complex_conjugate(&self) -> Self {
        if self.d < 0 {
            self.galois_conjugate()
        } else {
            self.clone()
        }
    }

    /// Sign of a real value, decided exactly.
    pub fn signum(&self) -> Result<i32> {
        if !self.is_real() {
            return Err(Error::domain("sign of a non-real number"));
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return Ok(if sa != 0 { sa } else { sb });
        }
        if sa == 0 {
            return Ok(sb);
        }
        // a and b√d have opposite signs: compare a² with b²d.
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        Ok(match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        })
    }

    /// Floating-point approximation of the real part and the imaginary part.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let r = (self.d.unsigned_abs() as f64).sqrt();
        if self.d > 0 {
            (a + b * r, 0.0)
        } else {
            (a, b * r)
        }
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rational_text(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let q: BigInt = q
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(p, q))
}

fn short_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", short_rational(&self.a));
        }
        let radical = if self.d < 0 {
            format!("√({})", self.d)
        } else {
            format!("√{}", self.d)
        };
        let coeff = if self.b.abs().is_one() {
            String::new()
        } else {
            short_rational(&self.b.abs())
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}{radical}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{coeff}{radical}", short_rational(&self.a))
        }
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticWire {
    a: String,
    b: String,
    d: i64,
}

impl Serialize for QuadraticNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadraticWire {
            a: rational_text(&self.a),
            b: rational_text(&self.b),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QuadraticWire::deserialize(d)?;
        let a = parse_rational(&w.a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&w.b).map_err(serde::de::Error::custom)?;
        QuadraticNumber::new(a, b, w.d).map_err(serde::de::Error::custom)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> Self {
        Self::canonical(-self.a, -self.b, self.d)
    }
}

// Operators panic on incompatible radicands; use the `try_*` forms when the
// operands are not known to share one.
impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn add(self, rhs: Self) -> QuadraticNumber {
        self.try_add(rhs).expect("mixed radicands")
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn sub(self, rhs: Self) -> QuadraticNumber {
        self.try_sub(rhs).expect("mixed radicands")
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn mul(self, rhs: Self) -> QuadraticNumber {
        self.try_mul(rhs).expect("mixed radicands")
    }
}

/// Accumulates a sum whose partial sums may involve several radicands;
/// the total must collapse to a single one.
#[derive(Clone, Debug, Default)]
pub struct QuadraticSum {
    rational: BigRational,
    radicals: BTreeMap<i64, BigRational>,
}

impl QuadraticSum {
    pub fn new() -> Self {
        QuadraticSum {
            rational: BigRational::zero(),
            radicals: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, x: &QuadraticNumber) {
        self.rational += &x.a;
        if !x.b.is_zero() {
            *self.radicals.entry(x.d).or_insert_with(BigRational::zero) += &x.b;
        }
    }

    pub fn add_scaled(&mut self, k: &BigRational, x: &QuadraticNumber) {
        self.rational += k * &x.a;
        if !x.b.is_zero() {
            *self.radicals.entry(x.d).or_insert_with(BigRational::zero) += k * &x.b;
        }
    }

    pub fn finish(self) -> Result<QuadraticNumber> {
        let mut live = self.radicals.into_iter().filter(|(_, b)| !b.is_zero());
        match (live.next(), live.next()) {
            (None, _) => Ok(QuadraticNumber::from_rational(self.rational)),
            (Some((d, b)), None) => Ok(QuadraticNumber::canonical(self.rational, b, d)),
            (Some((d1, _)), Some((d2, _))) => Err(Error::domain(format!(
                "sum retains independent radicals √{d1} and √{d2}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, d: i64) -> QuadraticNumber {
        QuadraticNumber::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            d,
        )
        .unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(12), (2, 3));
        assert_eq!(squarefree_decomposition(-45), (3, -5));
        assert_eq!(squarefree_decomposition(1), (1, 1));
        assert_eq!(squarefree_decomposition(-1), (1, -1));
        assert_eq!(squarefree_decomposition(9 * 49), (21, 1));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(1, 2, 4), q(5, 0, 1));
        assert_eq!(q(0, 1, 12), q(0, 2, 3));
        assert_eq!(q(3, 0, 7).radicand(), 1);
        assert!(QuadraticNumber::new(BigRational::zero(), BigRational::one(), 0).is_err());
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let x = QuadraticNumber::new(half(), half(), 5).unwrap();
        let y = x.galois_conjugate();
        assert_eq!(&x + &y, QuadraticNumber::one());
        assert_eq!(&x * &y, QuadraticNumber::from_integer(-1));
        assert_eq!(&(&x * &x) - &x, QuadraticNumber::one());
        assert_eq!(x.to_string(), "1/2+1/2√5");
        assert_eq!(x.signum().unwrap(), 1);
        assert_eq!(y.signum().unwrap(), -1);
        assert_eq!(&x.inverse().unwrap() * &x, QuadraticNumber::one());
    }

    #[test]
    fn complex_values() {
        let w = QuadraticNumber::new(-half(), half(), -3).unwrap();
        assert!(!w.is_real());
        let norm = &w * &w.complex_conjugate();
        assert_eq!(norm, QuadraticNumber::one());
        assert_eq!(&(&w * &w) * &w, QuadraticNumber::one());
        assert!(w.signum().is_err());
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let a = q(0, 1, 5);
        let b = q(0, 1, 7);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
        assert_eq!(a.try_add(&q(3, 0, 1)).unwrap(), q(3, 1, 5));
    }

    #[test]
    fn sums_collapse_to_one_radical() {
        let mut s = QuadraticSum::new();
        s.add(&q(1, 1, 5));
        s.add(&q(1, 1, 7));
        s.add(&q(0, -1, 7));
        assert_eq!(s.clone().finish().unwrap(), q(2, 1, 5));
        s.add(&q(0, 1, 7));
        assert!(s.finish().is_err());
    }

    #[test]
    fn wire_format() {
        let x = QuadraticNumber::new(half(), -half(), 5).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"a":"1/2","b":"-1/2","d":5}"#);
        assert_eq!(serde_json::from_str::<QuadraticNumber>(&json).unwrap(), x);
        assert_eq!(
            serde_json::to_string(&QuadraticNumber::from_integer(3)).unwrap(),
            r#"{"a":"3/1","b":"0/1","d":1}"#
        );
    }

    fn arb_q() -> impl Strategy<Value = QuadraticNumber> {
        (
            -20i64..20,
            1i64..6,
            -20i64..20,
            1i64..6,
            prop::sample::select(vec![-7i64, -3, 2, 5, 15]),
        )
            .prop_map(|(an, ad, bn, bd, d)| {
                QuadraticNumber::new(
                    BigRational::new(an.into(), ad.into()),
                    BigRational::new(bn.into(), bd.into()),
                    d,
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_q(), y in arb_q()) {
            if x.radicand() == y.radicand() || x.is_rational() || y.is_rational() {
                prop_assert_eq!(&x * &y, &y * &x);
                prop_assert_eq!(&(&x + &y) - &y, x.clone());
                if !y.is_zero() {
                    prop_assert_eq!(x.try_div(&y).unwrap().try_mul(&y).unwrap(), x.clone());
                }
                let lhs = (&x * &y).galois_conjugate();
                let rhs = &x.galois_conjugate() * &y.galois_conjugate();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

//! Exact arithmetic in the real number field Q(√3, √11).
//!
//! An element is stored as four rationals `(a, b, c, d)` standing for
//! `a + b√3 + c√11 + d√33`. The basis `{1, √3, √11, √33}` is linearly
//! independent over Q, so the representation is unique and equality is
//! component-wise.
//!
//! Internally the field is viewed as the tower `Q ⊂ Q(√3) ⊂ Q(√3)(√11)`:
//! an element is `P + Q√11` with `P = a + b√3` and `Q = c + d√3`. Inverses,
//! signs and square roots all reduce to the same operations one level down.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const SQRT11: f64 = 3.316_624_790_355_4;
const SQRT33: f64 = 5.744_562_646_538_029;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SqrtError {
    /// The element is nonnegative but has no square root in Q(√3, √11).
    #[error("element is not a square in Q(sqrt 3, sqrt 11)")]
    NotASquare,
    #[error("square root of a negative element")]
    Negative,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let err = |reason: &str| FieldError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Square root of a rational, if it is the square of a rational.
fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn sign_of(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Element `r + s√3` of the intermediate field Q(√3).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Quad3 {
    r: Rational,
    s: Rational,
}

impl Quad3 {
    fn zero() -> Self {
        Quad3 {
            r: Rational::zero(),
            s: Rational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn add(&self, o: &Quad3) -> Quad3 {
        Quad3 {
            r: &self.r + &o.r,
            s: &self.s + &o.s,
        }
    }

    fn sub(&self, o: &Quad3) -> Quad3 {
        Quad3 {
            r: &self.r - &o.r,
            s: &self.s - &o.s,
        }
    }

    fn neg(&self) -> Quad3 {
        Quad3 {
            r: -&self.r,
            s: -&self.s,
        }
    }

    fn mul(&self, o: &Quad3) -> Quad3 {
        Quad3 {
            r: &self.r * &o.r + &self.s * &o.s * Rational::from_integer(3.into()),
            s: &self.r * &o.s + &self.s * &o.r,
        }
    }

    fn scale(&self, k: &Rational) -> Quad3 {
        Quad3 {
            r: &self.r * k,
            s: &self.s * k,
        }
    }

    /// `r² − 3s²`, the norm down to Q.
    fn norm(&self) -> Rational {
        &self.r * &self.r - &self.s * &self.s * Rational::from_integer(3.into())
    }

    fn inverse(&self) -> Option<Quad3> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let inv = n.recip();
        Some(Quad3 {
            r: &self.r * &inv,
            s: -(&self.s * &inv),
        })
    }

    fn sign(&self) -> i32 {
        let sr = sign_of(&self.r);
        let ss = sign_of(&self.s);
        if ss == 0 {
            return sr;
        }
        if sr == 0 || sr == ss {
            return ss;
        }
        // Opposite signs: compare r² with 3s².
        sr * sign_of(&self.norm())
    }

    /// Some square root in Q(√3), of either sign.
    fn sqrt(&self) -> Option<Quad3> {
        if self.s.is_zero() {
            if let Some(r) = rational_sqrt(&self.r) {
                return Some(Quad3 {
                    r,
                    s: Rational::zero(),
                });
            }
            let third = &self.r / Rational::from_integer(3.into());
            return rational_sqrt(&third).map(|s| Quad3 {
                r: Rational::zero(),
                s,
            });
        }
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        for t in [(&self.r + &n) / &two, (&self.r - &n) / &two] {
            if let Some(r) = rational_sqrt(&t) {
                if r.is_zero() {
                    continue;
                }
                let s = &self.s / (&two * &r);
                let cand = Quad3 { r, s };
                if &cand.mul(&cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Exact element `a + b√3 + c√11 + d√33` of Q(√3, √11).
///
/// The derived ordering is lexicographic on `(a, b, c, d)`. It is a
/// canonical total order used for sorting vertex lists, not the numeric
/// order of the real numbers; use [`FieldElem::sign`] or
/// [`FieldElem::cmp_value`] for that.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl FieldElem {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        FieldElem { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        FieldElem {
            a,
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// Builds an element from four `(numerator, denominator)` pairs.
    pub fn from_ratios(q: [(i64, i64); 4]) -> Self {
        FieldElem {
            a: rat(q[0].0, q[0].1),
            b: rat(q[1].0, q[1].1),
            c: rat(q[2].0, q[2].1),
            d: rat(q[3].0, q[3].1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn split(&self) -> (Quad3, Quad3) {
        (
            Quad3 {
                r: self.a.clone(),
                s: self.b.clone(),
            },
            Quad3 {
                r: self.c.clone(),
                s: self.d.clone(),
            },
        )
    }

    fn join(p: Quad3, q: Quad3) -> Self {
        FieldElem {
            a: p.r,
            b: p.s,
            c: q.r,
            d: q.s,
        }
    }

    /// Floating-point image of the element. Never used for decisions.
    pub fn to_f64(&self) -> f64 {
        let f = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * SQRT3 + f(&self.c) * SQRT11 + f(&self.d) * SQRT33
    }

    /// Float approximation together with an upper bound on its absolute error.
    pub(crate) fn approx(&self) -> (f64, f64) {
        let f = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
        let terms = [
            f(&self.a),
            f(&self.b) * SQRT3,
            f(&self.c) * SQRT11,
            f(&self.d) * SQRT33,
        ];
        let value: f64 = terms.iter().sum();
        let mag: f64 = terms.iter().map(|t| t.abs()).sum();
        (value, mag * 32.0 * f64::EPSILON + f64::MIN_POSITIVE)
    }

    /// Conjugate under `√3 → −√3`.
    pub fn conj3(&self) -> Self {
        FieldElem {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    /// Conjugate under `√11 → −√11`.
    pub fn conj11(&self) -> Self {
        FieldElem {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn inverse(&self) -> Result<FieldElem, FieldError> {
        let (p, q) = self.split();
        // (P + Q√11)⁻¹ = (P − Q√11) / (P² − 11Q²)
        let eleven = Rational::from_integer(11.into());
        let norm = p.mul(&p).sub(&q.mul(&q).scale(&eleven));
        let inv = norm.inverse().ok_or(FieldError::DivisionByZero)?;
        Ok(Self::join(p.mul(&inv), q.neg().mul(&inv)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self * &other.inverse()?)
    }

    /// Sign of the real number, decided exactly.
    pub fn sign(&self) -> i32 {
        let (v, err) = self.approx();
        if v.is_finite() && v.abs() > err {
            return if v > 0.0 { 1 } else { -1 };
        }
        self.sign_exact()
    }

    /// Sign computed purely by case analysis over the tower, no floats.
    pub fn sign_exact(&self) -> i32 {
        let (p, q) = self.split();
        let sp = p.sign();
        let sq = q.sign();
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // P and Q√11 have opposite signs: compare P² with 11Q².
        let eleven = Rational::from_integer(11.into());
        let diff = p.mul(&p).sub(&q.mul(&q).scale(&eleven));
        sp * diff.sign()
    }

    /// Numeric comparison of the real values.
    pub fn cmp_value(&self, other: &FieldElem) -> std::cmp::Ordering {
        (self - other).sign().cmp(&0)
    }

    /// Nonnegative square root, if it lies in the field.
    pub fn sqrt(&self) -> Result<FieldElem, SqrtError> {
        match self.sign() {
            0 => return Ok(FieldElem::zero()),
            s if s < 0 => return Err(SqrtError::Negative),
            _ => {}
        }
        let root = self.sqrt_any().ok_or(SqrtError::NotASquare)?;
        debug_assert_eq!(&(&root * &root), self);
        Ok(if root.sign() < 0 { -root } else { root })
    }

    fn sqrt_any(&self) -> Option<FieldElem> {
        let (p, q) = self.split();
        let eleven = Rational::from_integer(11.into());
        if q.is_zero() {
            if let Some(r) = p.sqrt() {
                return Some(Self::join(r, Quad3::zero()));
            }
            let over11 = p.scale(&eleven.recip());
            return over11.sqrt().map(|s| Self::join(Quad3::zero(), s));
        }
        // y = R + S√11 with R² + 11S² = P and 2RS = Q, so
        // P² − 11Q² = (R² − 11S²)² and R² = (P ± √(P² − 11Q²)) / 2.
        let norm = p.mul(&p).sub(&q.mul(&q).scale(&eleven));
        let n = norm.sqrt()?;
        let half = rat(1, 2);
        for cand_n in [n.clone(), n.neg()] {
            let t = p.add(&cand_n).scale(&half);
            if let Some(r) = t.sqrt() {
                if r.is_zero() {
                    continue;
                }
                let s = q.scale(&half).mul(&r.inverse()?);
                let y = Self::join(r, s);
                if &(&y * &y) == self {
                    return Some(y);
                }
            }
        }
        None
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem::from_rational(q)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
            d: &self.d - &o.d,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let k = |n: i64| Rational::from_integer(n.into());
        FieldElem {
            a: a * e + k(3) * b * f + k(11) * c * g + k(33) * d * h,
            b: a * f + b * e + k(11) * (c * h + d * g),
            c: a * g + c * e + k(3) * (b * h + d * f),
            d: a * h + d * e + b * g + c * f,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        *self = &*self - o;
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for FieldElem {
    type Err = FieldError;

    /// Accepts `(a, b, c, d)` where each entry is an integer or `p/q`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| FieldError::Parse {
                input: s.to_string(),
                reason: "expected parenthesized quadruple".into(),
            })?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(FieldError::Parse {
                input: s.to_string(),
                reason: format!("expected 4 components, found {}", parts.len()),
            });
        }
        Ok(FieldElem {
            a: parse_rational(parts[0])?,
            b: parse_rational(parts[1])?,
            c: parse_rational(parts[2])?,
            d: parse_rational(parts[3])?,
        })
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq([&self.a, &self.b, &self.c, &self.d].map(|q| q.to_string()))
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(de)?;
        if parts.len() != 4 {
            return Err(serde::de::Error::custom("field element needs 4 rationals"));
        }
        let q = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(FieldElem {
            a: q(&parts[0])?,
            b: q(&parts[1])?,
            c: q(&parts[2])?,
            d: q(&parts[3])?,
        })
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod rational_serde {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
            ser.collect_seq(v.iter().map(|q| q.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
            let v: Vec<String> = Vec::deserialize(de)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(q: [(i64, i64); 4]) -> FieldElem {
        FieldElem::from_ratios(q)
    }

    #[test]
    fn addition_examples() {
        let x = fe([(1, 2), (0, 1), (0, 1), (-1, 6)]);
        let y = fe([(0, 1), (0, 1), (0, 1), (1, 6)]);
        assert_eq!(&x + &y, fe([(1, 2), (0, 1), (0, 1), (0, 1)]));
        assert!((&x + &(-&x)).is_zero());
        let t = fe([(0, 1), (1, 3), (0, 1), (0, 1)]);
        assert_eq!(&t + &t, fe([(0, 1), (2, 3), (0, 1), (0, 1)]));
    }

    #[test]
    fn multiplication_examples() {
        let s3 = fe([(0, 1), (1, 1), (0, 1), (0, 1)]);
        let s11 = fe([(0, 1), (0, 1), (1, 1), (0, 1)]);
        assert_eq!(&s3 * &s3, FieldElem::from_int(3));
        assert_eq!(&s3 * &s11, fe([(0, 1), (0, 1), (0, 1), (1, 1)]));
        let q = fe([(0, 1), (0, 1), (0, 1), (1, 6)]);
        assert_eq!(&q * &q, FieldElem::from_rational(rat(11, 12)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            FieldElem::from_int(2).inverse().unwrap(),
            FieldElem::from_rational(rat(1, 2))
        );
        let s3 = fe([(0, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(s3.inverse().unwrap(), fe([(0, 1), (1, 3), (0, 1), (0, 1)]));
        let x = fe([(1, 1), (1, 1), (0, 1), (0, 1)]);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, fe([(-1, 2), (1, 2), (0, 1), (0, 1)]));
        assert_eq!(&x * &inv, FieldElem::one());
        assert_eq!(
            FieldElem::zero().inverse(),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(FieldElem::zero().sign(), 0);
        // √3 < 2
        assert_eq!(fe([(-2, 1), (1, 1), (0, 1), (0, 1)]).sign(), -1);
        // √33 < 10
        assert_eq!(fe([(-10, 1), (0, 1), (0, 1), (1, 1)]).sign(), -1);
        assert_eq!(fe([(-10, 1), (0, 1), (0, 1), (1, 1)]).sign_exact(), -1);
        // √33 > 5
        assert_eq!(fe([(-5, 1), (0, 1), (0, 1), (1, 1)]).sign_exact(), 1);
    }

    #[test]
    fn sign_exact_on_near_cancellation() {
        // 1/2 - √33/6 + √11/4 - √3/... style mixtures: compare exact with float
        let x = fe([(3, 1), (-1, 1), (1, 1), (-1, 2)]); // 3 - 1.732 + 3.317 - 2.872 > 0
        assert_eq!(x.sign_exact(), 1);
        let y = fe([(0, 1), (0, 1), (1, 1), (-1, 1)]); // √11 - √33 < 0
        assert_eq!(y.sign_exact(), -1);
        let z = fe([(0, 1), (-2, 1), (0, 1), (1, 1)]); // √33 - 2√3 > 0
        assert_eq!(z.sign_exact(), 1);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(FieldElem::zero().sqrt(), Ok(FieldElem::zero()));
        let x = FieldElem::from_rational(rat(11, 36));
        assert_eq!(x.sqrt(), Ok(fe([(0, 1), (0, 1), (1, 6), (0, 1)])));
        assert_eq!(FieldElem::from_int(2).sqrt(), Err(SqrtError::NotASquare));
        assert_eq!(FieldElem::from_int(-4).sqrt(), Err(SqrtError::Negative));
        assert_eq!(
            FieldElem::from_rational(rat(7, 16)).sqrt(),
            Err(SqrtError::NotASquare)
        );
    }

    #[test]
    fn sqrt_of_nested_squares() {
        // (1 + √3)² = 4 + 2√3
        let y = fe([(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!((&y * &y).sqrt(), Ok(y.clone()));
        // (√3 - √11)² = 14 - 2√33, root is √11 - √3 > 0
        let z = fe([(0, 1), (1, 1), (-1, 1), (0, 1)]);
        assert_eq!((&z * &z).sqrt(), Ok(-z));
        // mixed element
        let w = fe([(1, 2), (-1, 3), (2, 5), (1, 7)]);
        let r = (&w * &w).sqrt().unwrap();
        assert_eq!(&r * &r, &w * &w);
        assert!(r.sign() >= 0);
        // 33 = (√33)², 3·11 and 11/3 = (√33/3)²
        assert_eq!(
            FieldElem::from_rational(rat(11, 3)).sqrt(),
            Ok(fe([(0, 1), (0, 1), (0, 1), (1, 3)]))
        );
    }

    #[test]
    fn text_round_trip() {
        let x: FieldElem = "(1/2, 0, 0, -1/6)".parse().unwrap();
        assert_eq!(x, fe([(1, 2), (0, 1), (0, 1), (-1, 6)]));
        assert_eq!(x.to_string(), "(1/2, 0, 0, -1/6)");
        assert!("(1, 2, 3)".parse::<FieldElem>().is_err());
        assert!("(1, 2, 3, 4/0)".parse::<FieldElem>().is_err());
        assert!("1, 2, 3, 4".parse::<FieldElem>().is_err());
    }
}

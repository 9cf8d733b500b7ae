//! Exact plane geometry over Q(√3, √11).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{rat, FieldElem, FieldError};

/// A point of the plane, also read as the complex number `x + iy`.
///
/// Ordering is the canonical lexicographic order on the eight rational
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: FieldElem,
    pub y: FieldElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cos² + sin² ≠ 1 for rotation ({cos}, {sin})")]
pub struct InvalidRotation {
    pub cos: Box<FieldElem>,
    pub sin: Box<FieldElem>,
}

/// A rotation given by its exact cosine and sine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSpec {
    cos: FieldElem,
    sin: FieldElem,
}

impl RotationSpec {
    pub fn new(cos: FieldElem, sin: FieldElem) -> Result<Self, InvalidRotation> {
        if &(&cos * &cos) + &(&sin * &sin) != FieldElem::one() {
            return Err(InvalidRotation {
                cos: Box::new(cos),
                sin: Box::new(sin),
            });
        }
        Ok(RotationSpec { cos, sin })
    }

    pub fn identity() -> Self {
        RotationSpec {
            cos: FieldElem::one(),
            sin: FieldElem::zero(),
        }
    }

    /// Rotation by π/3.
    pub fn pi_3() -> Self {
        RotationSpec {
            cos: FieldElem::from_rational(rat(1, 2)),
            sin: FieldElem::from_ratios([(0, 1), (1, 2), (0, 1), (0, 1)]),
        }
    }

    pub fn cos(&self) -> &FieldElem {
        &self.cos
    }

    pub fn sin(&self) -> &FieldElem {
        &self.sin
    }

    /// Composition, i.e. the product of the two unit complex numbers.
    pub fn then(&self, other: &RotationSpec) -> RotationSpec {
        RotationSpec {
            cos: &(&self.cos * &other.cos) - &(&self.sin * &other.sin),
            sin: &(&self.cos * &other.sin) + &(&self.sin * &other.cos),
        }
    }

    pub fn inverse(&self) -> RotationSpec {
        RotationSpec {
            cos: self.cos.clone(),
            sin: -&self.sin,
        }
    }
}

/// Rotation by π/3 about the origin.
pub fn rot_pi_3() -> RotationSpec {
    RotationSpec::pi_3()
}

impl Point {
    pub fn new(x: FieldElem, y: FieldElem) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(FieldElem::zero(), FieldElem::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(FieldElem::from_int(x), FieldElem::from_int(y))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> FieldElem {
        &(&self.x * &self.x) + &(&self.y * &self.y)
    }

    /// Reflection across the x-axis.
    pub fn conj(&self) -> Point {
        Point::new(self.x.clone(), -&self.y)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Complex multiplication of the vector by `cos + i·sin`.
    fn turn(&self, r: &RotationSpec) -> Point {
        Point::new(
            &(&self.x * &r.cos) - &(&self.y * &r.sin),
            &(&self.x * &r.sin) + &(&self.y * &r.cos),
        )
    }
}

pub fn dist2(p: &Point, q: &Point) -> FieldElem {
    p.sub(q).norm2()
}

/// Exact unit-distance test.
pub fn is_unit(p: &Point, q: &Point) -> bool {
    dist2(p, q) == FieldElem::one()
}

/// Rotates `p` about `center`.
pub fn rotate(p: &Point, center: &Point, r: &RotationSpec) -> Point {
    center.add(&p.sub(center).turn(r))
}

pub fn conj(p: &Point) -> Point {
    p.conj()
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl FromStr for Point {
    type Err = FieldError;

    /// Accepts `((a, b, c, d), (a, b, c, d))`, optionally followed by a
    /// trailing comma or period as in printed vertex lists.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim().trim_end_matches([',', '.']).trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| err("expected parenthesized pair"))?;
        let close = inner.find(')').ok_or_else(|| err("unbalanced parentheses"))?;
        let (first, rest) = inner.split_at(close + 1);
        let rest = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| err("expected comma between coordinates"))?;
        Ok(Point::new(first.parse()?, rest.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: [(i64, i64); 4], y: [(i64, i64); 4]) -> Point {
        Point::new(FieldElem::from_ratios(x), FieldElem::from_ratios(y))
    }

    const Z: [(i64, i64); 4] = [(0, 1), (0, 1), (0, 1), (0, 1)];

    #[test]
    fn dist2_examples() {
        let o = Point::origin();
        assert!(dist2(&o, &o).is_zero());
        assert_eq!(dist2(&o, &Point::from_ints(1, 0)), FieldElem::one());
        let q = p([(1, 2), (0, 1), (0, 1), (-1, 6)], Z);
        // (1/2 − √33/6)² = 1/4 + 11/12 − √33/6
        assert_eq!(
            dist2(&o, &q),
            FieldElem::from_ratios([(7, 6), (0, 1), (0, 1), (-1, 6)])
        );
        assert!(!is_unit(&o, &q));
    }

    #[test]
    fn unit_examples() {
        let o = Point::origin();
        assert!(is_unit(&o, &Point::from_ints(1, 0)));
        assert!(!is_unit(&o, &o));
        let q = p([(5, 6), (0, 1), (0, 1), (0, 1)], [(0, 1), (0, 1), (1, 6), (0, 1)]);
        assert!(is_unit(&o, &q));
    }

    #[test]
    fn rotate_examples() {
        let o = Point::origin();
        let e = Point::from_ints(1, 0);
        let r = RotationSpec::pi_3();
        assert_eq!(rotate(&e, &e, &r), e);
        assert_eq!(
            rotate(&e, &o, &r),
            p([(1, 2), (0, 1), (0, 1), (0, 1)], [(0, 1), (1, 2), (0, 1), (0, 1)])
        );
        let spin = RotationSpec::new(
            FieldElem::from_rational(rat(5, 6)),
            FieldElem::from_ratios([(0, 1), (0, 1), (1, 6), (0, 1)]),
        )
        .unwrap();
        assert_eq!(
            rotate(&e, &o, &spin),
            p([(5, 6), (0, 1), (0, 1), (0, 1)], [(0, 1), (0, 1), (1, 6), (0, 1)])
        );
    }

    #[test]
    fn sixfold_rotation_is_identity() {
        let q = p([(1, 3), (1, 2), (0, 1), (-1, 6)], [(1, 5), (0, 1), (1, 4), (0, 1)]);
        let r = rot_pi_3();
        let mut cur = q.clone();
        for _ in 0..6 {
            cur = rotate(&cur, &Point::origin(), &r);
        }
        assert_eq!(cur, q);
        let mut comp = RotationSpec::identity();
        for _ in 0..6 {
            comp = comp.then(&r);
        }
        assert_eq!(comp, RotationSpec::identity());
        assert_eq!(conj(&conj(&q)), q);
    }

    #[test]
    fn invalid_rotation_rejected() {
        assert!(RotationSpec::new(FieldElem::one(), FieldElem::one()).is_err());
    }

    #[test]
    fn parse_point() {
        let q: Point = " ((1/2, 0, 0, -1/6), (0, 0, 0, 0)),".parse().unwrap();
        assert_eq!(q, p([(1, 2), (0, 1), (0, 1), (-1, 6)], Z));
        let r: Point = "((5/2, 0, 0, 0), (0, 1/2, 0, 0)).".parse().unwrap();
        assert_eq!(r.to_string(), "((5/2, 0, 0, 0), (0, 1/2, 0, 0))");
        assert!("((1,2,3,4) (1,2,3,4))".parse::<Point>().is_err());
    }
}
